#ifndef HSO_PARSE_HPP
#define HSO_PARSE_HPP

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hso/ir.hpp"

// Recursive-descent parser for the textual IR, the matching pretty-printer,
// and a definite-assignment lint. Grammar (one file per app, `#` comments):
//
//   program   := class*
//   class     := "class" QNAME ("extends" QNAME)?
//                ("implements" QNAME ("," QNAME)*)? "{" member* "}"
//   member    := "field" TYPE IDENT ";" | method
//   method    := ("plain"|"lifecycle"|"callback") "method" TYPE IDENT
//                "(" params? ")" "{" decl* stmt* "}"
//   decl      := "local" TYPE IDENT ";"
//   stmt      := (LABEL ":")? core ";"
//   core      := IDENT "=" expr | "call" callexpr
//              | "if" condexpr "goto" LABEL ("else" LABEL)?
//              | "goto" LABEL | "return" IDENT? | recv "." IDENT "=" IDENT | "nop"
//   expr      := literal | IDENT | recv "." IDENT | IDENT BINOP operand | "call" callexpr
//   callexpr  := ("static"|"virtual"|"special") QNAME "#" IDENT "(" args? ")" ("on" IDENT)?
//   condexpr  := IDENT | operand RELOP operand
//
// BINOP: + - * == != < <= > >= && ||   RELOP: == != < <= > >=
// Single-target `if` is normalized to explicit two-target form.

namespace hso {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                             ": " + msg),
          line(l),
          column(c) {}
};

struct DuplicateSignatureError : ParseError {
    std::string signature;
    DuplicateSignatureError(int l, int c, const std::string& sig)
        : ParseError(l, c, "duplicate method signature " + sig), signature(sig) {}
};

struct UnknownLabelError : ParseError {
    std::string method;
    std::string label;
    UnknownLabelError(int l, int c, const std::string& m, const std::string& lbl)
        : ParseError(l, c, "unknown label " + lbl + " in method " + m), method(m), label(lbl) {}
};

namespace detail {

enum class Tok {
    Ident,
    Int,
    Str,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Assign,  // =
    Dot,
    Hash,
    OpEq,
    OpNe,
    OpLt,
    OpLe,
    OpGt,
    OpGe,
    OpAdd,
    OpSub,
    OpMul,
    OpAnd,
    OpOr,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t int_value = 0;
    int line = 0;
    int col = 0;
};

inline bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& cur() const { return cur_; }
    const Token& peek() {
        if (!has_peek_) {
            peek_ = lex();
            has_peek_ = true;
        }
        return peek_;
    }
    void advance() {
        if (has_peek_) {
            cur_ = peek_;
            has_peek_ = false;
        } else {
            cur_ = lex();
        }
    }

private:
    Token lex() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (ident_start(c)) {
            size_t start = pos_;
            while (pos_ < src_.size() && ident_char(src_[pos_])) step();
            t.kind = Tok::Ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                step();
            t.kind = Tok::Int;
            t.int_value = std::stoll(src_.substr(start, pos_ - start));
            return t;
        }
        if (c == '"') {
            step();
            std::string out;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                char d = src_[pos_];
                if (d == '\\' && pos_ + 1 < src_.size()) {
                    step();
                    char e = src_[pos_];
                    switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '\\': out.push_back('\\'); break;
                    case '"': out.push_back('"'); break;
                    default: throw ParseError(line_, col_, "bad escape in string literal");
                    }
                    step();
                } else if (d == '\n') {
                    throw ParseError(t.line, t.col, "unterminated string literal");
                } else {
                    out.push_back(d);
                    step();
                }
            }
            if (pos_ >= src_.size()) throw ParseError(t.line, t.col, "unterminated string literal");
            step();  // closing quote
            t.kind = Tok::Str;
            t.text = std::move(out);
            return t;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two('=', '=')) return punct(t, Tok::OpEq, 2);
        if (two('!', '=')) return punct(t, Tok::OpNe, 2);
        if (two('<', '=')) return punct(t, Tok::OpLe, 2);
        if (two('>', '=')) return punct(t, Tok::OpGe, 2);
        if (two('&', '&')) return punct(t, Tok::OpAnd, 2);
        if (two('|', '|')) return punct(t, Tok::OpOr, 2);
        switch (c) {
        case '{': return punct(t, Tok::LBrace, 1);
        case '}': return punct(t, Tok::RBrace, 1);
        case '(': return punct(t, Tok::LParen, 1);
        case ')': return punct(t, Tok::RParen, 1);
        case ',': return punct(t, Tok::Comma, 1);
        case ';': return punct(t, Tok::Semi, 1);
        case ':': return punct(t, Tok::Colon, 1);
        case '=': return punct(t, Tok::Assign, 1);
        case '.': return punct(t, Tok::Dot, 1);
        case '#': return punct(t, Tok::Hash, 1);
        case '<': return punct(t, Tok::OpLt, 1);
        case '>': return punct(t, Tok::OpGt, 1);
        case '+': return punct(t, Tok::OpAdd, 1);
        case '-': return punct(t, Tok::OpSub, 1);
        case '*': return punct(t, Tok::OpMul, 1);
        default: throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
    }

    Token punct(Token t, Tok kind, int width) {
        t.kind = kind;
        for (int i = 0; i < width; ++i) step();
        return t;
    }

    // `#` doubles as the signature separator (Class#method); it opens a line
    // comment only when followed by whitespace, another '#', or end of line.
    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#' && (pos_ + 1 >= src_.size() || src_[pos_ + 1] == ' ' ||
                             src_[pos_ + 1] == '\t' || src_[pos_ + 1] == '\r' ||
                             src_[pos_ + 1] == '\n' || src_[pos_ + 1] == '#')) {
                while (pos_ < src_.size() && src_[pos_] != '\n') step();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                step();
            } else {
                break;
            }
        }
    }

    void step() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
    Token peek_;
    bool has_peek_ = false;
};

inline const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {
        "class", "extends", "implements", "field",  "method", "plain",
        "lifecycle", "callback", "local", "call",   "if",     "goto",
        "else", "return", "nop", "static", "virtual", "special",
        "on", "true", "false"};
    return kw;
}

class Parser {
public:
    Parser(const std::string& src, std::string app_id) : lex_(src), app_id_(std::move(app_id)) {}

    Program run() {
        Program p;
        p.app_id = app_id_;
        while (cur().kind != Tok::End) {
            expect_keyword("class");
            p.classes.push_back(parse_class());
        }
        index(p);
        lint(p);
        return p;
    }

private:
    const Token& cur() const { return lex_.cur(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur().line, cur().col, msg);
    }

    bool at_keyword(const std::string& kw) const {
        return cur().kind == Tok::Ident && cur().text == kw;
    }
    void expect_keyword(const std::string& kw) {
        if (!at_keyword(kw)) fail("expected '" + kw + "'");
        lex_.advance();
    }
    void expect(Tok k, const char* what) {
        if (cur().kind != k) fail(std::string("expected ") + what);
        lex_.advance();
    }

    std::string parse_ident(const char* what) {
        if (cur().kind != Tok::Ident) fail(std::string("expected ") + what);
        if (keywords().count(cur().text)) fail("'" + cur().text + "' is a reserved word");
        std::string s = cur().text;
        lex_.advance();
        return s;
    }

    std::string parse_qname() {
        std::string q = parse_ident("qualified name");
        while (cur().kind == Tok::Dot) {
            lex_.advance();
            q += ".";
            q += parse_ident("name segment");
        }
        return q;
    }

    ClassDef parse_class() {
        ClassDef cd;
        cd.name = parse_qname();
        if (at_keyword("extends")) {
            lex_.advance();
            cd.superclass = parse_qname();
        }
        if (at_keyword("implements")) {
            lex_.advance();
            cd.interfaces.push_back(parse_qname());
            while (cur().kind == Tok::Comma) {
                lex_.advance();
                cd.interfaces.push_back(parse_qname());
            }
        }
        expect(Tok::LBrace, "'{'");
        while (cur().kind != Tok::RBrace) {
            if (at_keyword("field")) {
                lex_.advance();
                FieldDef f;
                f.type = parse_qname();
                f.name = parse_ident("field name");
                for (const auto& existing : cd.fields)
                    if (existing.name == f.name) fail("duplicate field " + f.name);
                expect(Tok::Semi, "';'");
                cd.fields.push_back(std::move(f));
            } else {
                cd.methods.push_back(parse_method(cd.name));
            }
        }
        lex_.advance();  // '}'
        return cd;
    }

    MethodDef parse_method(const std::string& owner) {
        MethodDef m;
        m.owner_class = owner;
        if (at_keyword("plain")) {
            m.kind = MethodKind::Plain;
        } else if (at_keyword("lifecycle")) {
            m.kind = MethodKind::Lifecycle;
        } else if (at_keyword("callback")) {
            m.kind = MethodKind::Callback;
        } else {
            fail("expected 'field' or a method ('plain'|'lifecycle'|'callback')");
        }
        lex_.advance();
        expect_keyword("method");
        m.return_type = parse_qname();
        m.name = parse_ident("method name");
        expect(Tok::LParen, "'('");
        if (cur().kind != Tok::RParen) {
            while (true) {
                Param prm;
                prm.type = parse_qname();
                prm.name = parse_ident("parameter name");
                m.params.push_back(std::move(prm));
                if (cur().kind != Tok::Comma) break;
                lex_.advance();
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        while (at_keyword("local")) {
            lex_.advance();
            Param l;
            l.type = parse_qname();
            l.name = parse_ident("local name");
            expect(Tok::Semi, "';'");
            m.locals.push_back(std::move(l));
        }
        declared_.clear();
        for (const auto& p : m.params) {
            if (!declared_.insert(p.name).second) fail("duplicate parameter " + p.name);
        }
        for (const auto& l : m.locals) {
            if (!declared_.insert(l.name).second) fail("duplicate local " + l.name);
        }
        while (cur().kind != Tok::RBrace) {
            parse_statement(m);
        }
        lex_.advance();  // '}'
        normalize(m);
        return m;
    }

    void parse_statement(MethodDef& m) {
        Statement st;
        st.id = static_cast<int>(m.body.size());
        if (cur().kind == Tok::Ident && !keywords().count(cur().text) &&
            lex_.peek().kind == Tok::Colon) {
            st.label = cur().text;
            if (m.labels.count(*st.label)) fail("duplicate label " + *st.label);
            m.labels[*st.label] = st.id;
            lex_.advance();
            lex_.advance();
        }
        st.form = parse_core();
        expect(Tok::Semi, "';'");
        m.body.push_back(std::move(st));
    }

    StmtForm parse_core() {
        if (at_keyword("nop")) {
            lex_.advance();
            return NopStmt{};
        }
        if (at_keyword("goto")) {
            lex_.advance();
            return GotoStmt{parse_ident("label")};
        }
        if (at_keyword("return")) {
            lex_.advance();
            ReturnStmt r;
            if (cur().kind == Tok::Ident && !keywords().count(cur().text)) {
                r.value = use_local(parse_ident("local"));
            }
            return r;
        }
        if (at_keyword("if")) {
            lex_.advance();
            CondStmt c;
            c.cond = parse_condexpr();
            expect_keyword("goto");
            c.then_label = parse_ident("label");
            if (at_keyword("else")) {
                lex_.advance();
                c.else_label = parse_ident("label");
            }
            return c;
        }
        if (at_keyword("call")) {
            lex_.advance();
            InvokeStmt inv;
            inv.call = parse_callexpr();
            return inv;
        }
        // IDENT-initiated: assignment or field store.
        std::vector<std::string> chain;
        chain.push_back(parse_ident("identifier"));
        while (cur().kind == Tok::Dot) {
            lex_.advance();
            chain.push_back(parse_ident("name segment"));
        }
        expect(Tok::Assign, "'='");
        if (chain.size() >= 2) {
            FieldStoreStmt fs;
            fs.recv = resolve_receiver(chain);
            fs.field = chain.back();
            fs.source = use_local(parse_ident("source local"));
            return fs;
        }
        std::string target = use_local(chain[0]);
        Expr value = parse_expr();
        if (auto* call = std::get_if<CallExpr>(&value)) {
            InvokeStmt inv;
            inv.call = std::move(*call);
            inv.target = target;
            return inv;
        }
        return AssignStmt{std::move(target), std::move(value)};
    }

    Expr parse_expr() {
        if (at_keyword("call")) {
            lex_.advance();
            return parse_callexpr();
        }
        if (auto lit = try_parse_literal()) return ConstExpr{*lit};
        std::vector<std::string> chain;
        chain.push_back(parse_ident("identifier"));
        while (cur().kind == Tok::Dot) {
            lex_.advance();
            chain.push_back(parse_ident("name segment"));
        }
        if (chain.size() >= 2) {
            FieldLoadExpr fl;
            fl.recv = resolve_receiver(chain);
            fl.field = chain.back();
            return fl;
        }
        if (auto op = try_binop()) {
            BinOpExpr b;
            b.op = *op;
            b.lhs = Operand::of_local(use_local(chain[0]));
            b.rhs = parse_operand();
            return b;
        }
        return LocalExpr{use_local(chain[0])};
    }

    CondExpr parse_condexpr() {
        CondExpr c;
        if (cur().kind == Tok::Ident && !keywords().count(cur().text)) {
            std::string name = cur().text;
            Tok nk = lex_.peek().kind;
            if (!is_relop(nk)) {
                lex_.advance();
                c.is_compare = false;
                c.var = use_local(name);
                return c;
            }
        }
        c.is_compare = true;
        c.lhs = parse_operand();
        if (!is_relop(cur().kind)) fail("expected relational operator");
        c.op = relop_of(cur().kind);
        lex_.advance();
        c.rhs = parse_operand();
        return c;
    }

    CallExpr parse_callexpr() {
        CallExpr ce;
        if (at_keyword("static")) {
            ce.kind = CallKind::Static;
        } else if (at_keyword("virtual")) {
            ce.kind = CallKind::Virtual;
        } else if (at_keyword("special")) {
            ce.kind = CallKind::Special;
        } else {
            fail("expected call kind (static|virtual|special)");
        }
        lex_.advance();
        ce.callee_class = parse_qname();
        expect(Tok::Hash, "'#'");
        ce.callee_name = parse_ident("method name");
        expect(Tok::LParen, "'('");
        if (cur().kind != Tok::RParen) {
            while (true) {
                ce.args.push_back(parse_operand());
                if (cur().kind != Tok::Comma) break;
                lex_.advance();
            }
        }
        expect(Tok::RParen, "')'");
        if (at_keyword("on")) {
            lex_.advance();
            ce.receiver = use_local(parse_ident("receiver local"));
        }
        if (ce.kind == CallKind::Static && ce.receiver)
            fail("static call must not have a receiver");
        if (ce.kind != CallKind::Static && !ce.receiver)
            fail("virtual/special call requires 'on <receiver>'");
        return ce;
    }

    Operand parse_operand() {
        if (auto lit = try_parse_literal()) return Operand::of_lit(*lit);
        return Operand::of_local(use_local(parse_ident("operand")));
    }

    std::optional<Literal> try_parse_literal() {
        if (cur().kind == Tok::Int) {
            Literal l = Literal::of_int(cur().int_value);
            lex_.advance();
            return l;
        }
        if (cur().kind == Tok::OpSub && lex_.peek().kind == Tok::Int) {
            lex_.advance();
            Literal l = Literal::of_int(-cur().int_value);
            lex_.advance();
            return l;
        }
        if (cur().kind == Tok::Str) {
            Literal l = Literal::of_str(cur().text);
            lex_.advance();
            return l;
        }
        if (at_keyword("true")) {
            lex_.advance();
            return Literal::of_bool(true);
        }
        if (at_keyword("false")) {
            lex_.advance();
            return Literal::of_bool(false);
        }
        return std::nullopt;
    }

    static bool is_relop(Tok k) {
        return k == Tok::OpEq || k == Tok::OpNe || k == Tok::OpLt || k == Tok::OpLe ||
               k == Tok::OpGt || k == Tok::OpGe;
    }
    static RelOpKind relop_of(Tok k) {
        switch (k) {
        case Tok::OpEq: return RelOpKind::Eq;
        case Tok::OpNe: return RelOpKind::Ne;
        case Tok::OpLt: return RelOpKind::Lt;
        case Tok::OpLe: return RelOpKind::Le;
        case Tok::OpGt: return RelOpKind::Gt;
        default: return RelOpKind::Ge;
        }
    }

    std::optional<BinOpKind> try_binop() {
        switch (cur().kind) {
        case Tok::OpAdd: lex_.advance(); return BinOpKind::Add;
        case Tok::OpSub: lex_.advance(); return BinOpKind::Sub;
        case Tok::OpMul: lex_.advance(); return BinOpKind::Mul;
        case Tok::OpEq: lex_.advance(); return BinOpKind::Eq;
        case Tok::OpNe: lex_.advance(); return BinOpKind::Ne;
        case Tok::OpLt: lex_.advance(); return BinOpKind::Lt;
        case Tok::OpLe: lex_.advance(); return BinOpKind::Le;
        case Tok::OpGt: lex_.advance(); return BinOpKind::Gt;
        case Tok::OpGe: lex_.advance(); return BinOpKind::Ge;
        case Tok::OpAnd: lex_.advance(); return BinOpKind::And;
        case Tok::OpOr: lex_.advance(); return BinOpKind::Or;
        default: return std::nullopt;
        }
    }

    // Locals shadow class names in receiver position.
    Receiver resolve_receiver(const std::vector<std::string>& chain) {
        Receiver r;
        if (chain.size() == 2 && declared_.count(chain[0])) {
            r.is_local = true;
            r.name = chain[0];
            return r;
        }
        r.is_local = false;
        r.name = chain[0];
        for (size_t i = 1; i + 1 < chain.size(); ++i) r.name += "." + chain[i];
        return r;
    }

    std::string use_local(const std::string& name) {
        if (!declared_.count(name)) fail("undeclared local '" + name + "'");
        return name;
    }

    // Give every Cond an explicit else label; falls back to a synthetic
    // trailing nop when the fall-through would run off the method end.
    void normalize(MethodDef& m) {
        bool needs_trailing = false;
        for (size_t i = 0; i < m.body.size(); ++i) {
            auto* c = std::get_if<CondStmt>(&m.body[i].form);
            if (c && c->else_label.empty() && i + 1 == m.body.size()) needs_trailing = true;
        }
        if (needs_trailing) {
            Statement nop;
            nop.id = static_cast<int>(m.body.size());
            nop.form = NopStmt{};
            m.body.push_back(std::move(nop));
        }
        for (size_t i = 0; i < m.body.size(); ++i) {
            auto* c = std::get_if<CondStmt>(&m.body[i].form);
            if (!c || !c->else_label.empty()) continue;
            Statement& next = m.body[i + 1];
            if (!next.label) {
                std::string synth = "__ft" + std::to_string(next.id);
                while (m.labels.count(synth)) synth += "_";
                next.label = synth;
                m.labels[synth] = next.id;
            }
            c->else_label = *next.label;
        }
        for (const auto& st : m.body) {
            if (auto* c = std::get_if<CondStmt>(&st.form)) {
                check_label(m, c->then_label);
                check_label(m, c->else_label);
            } else if (auto* g = std::get_if<GotoStmt>(&st.form)) {
                check_label(m, g->label);
            }
        }
    }

    void check_label(const MethodDef& m, const std::string& label) const {
        if (!m.labels.count(label))
            throw UnknownLabelError(cur().line, cur().col, m.key(), label);
    }

    void index(Program& p) {
        for (auto& cd : p.classes) {
            if (p.class_index.count(cd.name))
                throw ParseError(1, 1, "duplicate class " + cd.name);
            p.class_index[cd.name] = &cd;
        }
        for (auto& cd : p.classes) {
            for (auto& m : cd.methods) {
                auto key = m.key();
                if (p.index.count(key)) throw DuplicateSignatureError(1, 1, key);
                p.index[key] = &m;
            }
        }
        for (auto& cd : p.classes) {
            if (cd.superclass) cd.superclass_external = !p.class_index.count(*cd.superclass);
        }
    }

    // Definite assignment: a read local must be a parameter or defined on
    // every path from entry. Violations are warnings, not errors.
    void lint(Program& p) {
        for (const auto& cd : p.classes) {
            for (const auto& m : cd.methods) lint_method(p, m);
        }
    }

    void lint_method(Program& p, const MethodDef& m) {
        if (m.body.empty()) return;
        size_t n = m.body.size();
        std::vector<std::vector<int>> succ(n);
        for (size_t i = 0; i < n; ++i) {
            const auto& st = m.body[i];
            if (auto* c = std::get_if<CondStmt>(&st.form)) {
                succ[i].push_back(m.labels.at(c->then_label));
                succ[i].push_back(m.labels.at(c->else_label));
            } else if (auto* g = std::get_if<GotoStmt>(&st.form)) {
                succ[i].push_back(m.labels.at(g->label));
            } else if (!std::holds_alternative<ReturnStmt>(st.form) && i + 1 < n) {
                succ[i].push_back(static_cast<int>(i) + 1);
            }
        }
        // in[i] = set of definitely-assigned locals before stmt i; meet is
        // intersection over predecessors, so iterate to a fixpoint.
        std::set<std::string> all;
        for (const auto& l : m.locals) all.insert(l.name);
        for (const auto& prm : m.params) all.insert(prm.name);
        std::set<std::string> entry;
        for (const auto& prm : m.params) entry.insert(prm.name);
        std::vector<std::set<std::string>> in(n, all), out(n, all);
        in[0] = entry;
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < n; ++i) {
                std::set<std::string> o = in[i];
                if (auto def = m.body[i].defined_local()) o.insert(*def);
                if (o != out[i]) {
                    out[i] = o;
                    changed = true;
                }
                for (int s : succ[i]) {
                    std::set<std::string> meet;
                    for (const auto& v : in[s])
                        if (out[i].count(v)) meet.insert(v);
                    if (meet != in[s]) {
                        in[s] = meet;
                        changed = true;
                    }
                }
            }
        }
        for (size_t i = 0; i < n; ++i) {
            for (const auto& v : m.body[i].read_locals()) {
                if (!in[i].count(v)) {
                    p.lint_warnings.push_back(m.key() + ": local '" + v +
                                              "' may be read before assignment at statement " +
                                              std::to_string(i));
                }
            }
        }
    }

    Lexer lex_;
    std::string app_id_;
    std::set<std::string> declared_;
};

}  // namespace detail

inline Program parse_program(const std::string& text, const std::string& app_id) {
    detail::Parser p(text, app_id);
    return p.run();
}

// ---------------------------------------------------------------------------
// Pretty printer (canonical form; parse(print(p)) is structurally identical)

namespace detail {

inline std::string print_literal(const Literal& l) {
    switch (l.kind) {
    case Literal::Kind::Int: return std::to_string(l.int_value);
    case Literal::Kind::Bool: return l.bool_value ? "true" : "false";
    case Literal::Kind::Str: {
        std::string out = "\"";
        for (char c : l.str_value) {
            switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            default: out.push_back(c);
            }
        }
        out += "\"";
        return out;
    }
    }
    return {};
}

inline std::string print_operand(const Operand& o) {
    return o.is_local ? o.local : print_literal(o.lit);
}

inline const char* binop_text(BinOpKind k) {
    switch (k) {
    case BinOpKind::Add: return "+";
    case BinOpKind::Sub: return "-";
    case BinOpKind::Mul: return "*";
    case BinOpKind::Eq: return "==";
    case BinOpKind::Ne: return "!=";
    case BinOpKind::Lt: return "<";
    case BinOpKind::Le: return "<=";
    case BinOpKind::Gt: return ">";
    case BinOpKind::Ge: return ">=";
    case BinOpKind::And: return "&&";
    case BinOpKind::Or: return "||";
    }
    return "?";
}

inline const char* relop_text(RelOpKind k) {
    switch (k) {
    case RelOpKind::Eq: return "==";
    case RelOpKind::Ne: return "!=";
    case RelOpKind::Lt: return "<";
    case RelOpKind::Le: return "<=";
    case RelOpKind::Gt: return ">";
    case RelOpKind::Ge: return ">=";
    }
    return "?";
}

inline std::string print_callexpr(const CallExpr& c) {
    std::string out = "call ";
    switch (c.kind) {
    case CallKind::Static: out += "static "; break;
    case CallKind::Virtual: out += "virtual "; break;
    case CallKind::Special: out += "special "; break;
    }
    out += c.callee_class + "#" + c.callee_name + "(";
    for (size_t i = 0; i < c.args.size(); ++i) {
        if (i) out += ", ";
        out += print_operand(c.args[i]);
    }
    out += ")";
    if (c.receiver) out += " on " + *c.receiver;
    return out;
}

inline std::string print_expr(const Expr& e) {
    if (auto* c = std::get_if<ConstExpr>(&e)) return print_literal(c->value);
    if (auto* l = std::get_if<LocalExpr>(&e)) return l->name;
    if (auto* f = std::get_if<FieldLoadExpr>(&e)) return f->recv.name + "." + f->field;
    if (auto* b = std::get_if<BinOpExpr>(&e))
        return print_operand(b->lhs) + " " + binop_text(b->op) + " " + print_operand(b->rhs);
    return print_callexpr(std::get<CallExpr>(e));
}

inline std::string print_cond(const CondExpr& c) {
    if (!c.is_compare) return c.var;
    return print_operand(c.lhs) + " " + relop_text(c.op) + " " + print_operand(c.rhs);
}

}  // namespace detail

inline std::string print_statement(const Statement& st) {
    using namespace detail;
    if (auto* a = std::get_if<AssignStmt>(&st.form)) return a->target + " = " + print_expr(a->value);
    if (auto* inv = std::get_if<InvokeStmt>(&st.form)) {
        if (inv->target) return *inv->target + " = " + print_callexpr(inv->call);
        return print_callexpr(inv->call);
    }
    if (auto* c = std::get_if<CondStmt>(&st.form))
        return "if " + print_cond(c->cond) + " goto " + c->then_label + " else " + c->else_label;
    if (auto* g = std::get_if<GotoStmt>(&st.form)) return "goto " + g->label;
    if (auto* r = std::get_if<ReturnStmt>(&st.form))
        return r->value ? "return " + *r->value : "return";
    if (auto* fs = std::get_if<FieldStoreStmt>(&st.form))
        return fs->recv.name + "." + fs->field + " = " + fs->source;
    return "nop";
}

inline std::string print_program(const Program& p) {
    std::ostringstream os;
    for (const auto& cd : p.classes) {
        os << "class " << cd.name;
        if (cd.superclass) os << " extends " << *cd.superclass;
        if (!cd.interfaces.empty()) {
            os << " implements ";
            for (size_t i = 0; i < cd.interfaces.size(); ++i) {
                if (i) os << ", ";
                os << cd.interfaces[i];
            }
        }
        os << " {\n";
        for (const auto& f : cd.fields) os << "  field " << f.type << " " << f.name << ";\n";
        for (const auto& m : cd.methods) {
            os << "  ";
            switch (m.kind) {
            case MethodKind::Plain: os << "plain"; break;
            case MethodKind::Lifecycle: os << "lifecycle"; break;
            case MethodKind::Callback: os << "callback"; break;
            }
            os << " method " << m.return_type << " " << m.name << "(";
            for (size_t i = 0; i < m.params.size(); ++i) {
                if (i) os << ", ";
                os << m.params[i].type << " " << m.params[i].name;
            }
            os << ") {\n";
            for (const auto& l : m.locals) os << "    local " << l.type << " " << l.name << ";\n";
            for (const auto& st : m.body) {
                os << "    ";
                if (st.label) os << *st.label << ": ";
                os << print_statement(st) << ";\n";
            }
            os << "  }\n";
        }
        os << "}\n";
    }
    return os.str();
}

}  // namespace hso

#endif  // HSO_PARSE_HPP
