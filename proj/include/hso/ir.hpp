#ifndef HSO_IR_HPP
#define HSO_IR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

// In-memory model of the textual IR: classes, methods, typed locals and
// three-address statements. Everything is immutable after parsing; analyses
// share Program by const reference.

namespace hso {

// ---------------------------------------------------------------------------
// Literals and operands

struct Literal {
    enum class Kind { Int, Bool, Str };
    Kind kind = Kind::Int;
    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string str_value;

    static Literal of_int(std::int64_t v) { return {Kind::Int, v, false, {}}; }
    static Literal of_bool(bool v) { return {Kind::Bool, 0, v, {}}; }
    static Literal of_str(std::string v) { return {Kind::Str, 0, false, std::move(v)}; }

    bool operator==(const Literal& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
        case Kind::Int: return int_value == o.int_value;
        case Kind::Bool: return bool_value == o.bool_value;
        case Kind::Str: return str_value == o.str_value;
        }
        return false;
    }
};

// A local name or a literal; call arguments and binop/relop operands.
struct Operand {
    bool is_local = false;
    std::string local;
    Literal lit;

    static Operand of_local(std::string name) {
        Operand o;
        o.is_local = true;
        o.local = std::move(name);
        return o;
    }
    static Operand of_lit(Literal l) {
        Operand o;
        o.lit = std::move(l);
        return o;
    }
    bool operator==(const Operand& o) const {
        return is_local == o.is_local && local == o.local && lit == o.lit;
    }
};

// ---------------------------------------------------------------------------
// Receivers and field references

// Receiver of a field load/store: either a local variable or a class name
// (static access). Locals shadow class names during parsing.
struct Receiver {
    bool is_local = false;
    std::string name;  // local name or qualified class name

    bool operator==(const Receiver& o) const {
        return is_local == o.is_local && name == o.name;
    }
};

// Qualified field reference in catalog notation: "some.Class#field".
inline std::string field_ref(const std::string& cls, const std::string& field) {
    return cls + "#" + field;
}

// ---------------------------------------------------------------------------
// Expressions

enum class BinOpKind { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

enum class CallKind { Static, Virtual, Special };

struct CallExpr {
    CallKind kind = CallKind::Static;
    std::string callee_class;  // qualified
    std::string callee_name;
    std::optional<std::string> receiver;  // local; required for virtual/special
    std::vector<Operand> args;

    std::string callee_key() const { return callee_class + "#" + callee_name; }

    bool operator==(const CallExpr& o) const {
        return kind == o.kind && callee_class == o.callee_class &&
               callee_name == o.callee_name && receiver == o.receiver && args == o.args;
    }
};

struct ConstExpr {
    Literal value;
    bool operator==(const ConstExpr& o) const { return value == o.value; }
};
struct LocalExpr {
    std::string name;
    bool operator==(const LocalExpr& o) const { return name == o.name; }
};
struct FieldLoadExpr {
    Receiver recv;
    std::string field;
    bool operator==(const FieldLoadExpr& o) const { return recv == o.recv && field == o.field; }
};
struct BinOpExpr {
    BinOpKind op = BinOpKind::Add;
    Operand lhs;  // grammar guarantees lhs is a local, kept as Operand for symmetry
    Operand rhs;
    bool operator==(const BinOpExpr& o) const { return op == o.op && lhs == o.lhs && rhs == o.rhs; }
};

using Expr = std::variant<ConstExpr, LocalExpr, FieldLoadExpr, BinOpExpr, CallExpr>;

// ---------------------------------------------------------------------------
// Conditions

enum class RelOpKind { Eq, Ne, Lt, Le, Gt, Ge };

// Either a bare bool local or `operand RELOP operand`.
struct CondExpr {
    bool is_compare = false;
    std::string var;  // when !is_compare
    RelOpKind op = RelOpKind::Eq;
    Operand lhs;
    Operand rhs;

    std::set<std::string> read_locals() const {
        std::set<std::string> out;
        if (!is_compare) {
            out.insert(var);
            return out;
        }
        if (lhs.is_local) out.insert(lhs.local);
        if (rhs.is_local) out.insert(rhs.local);
        return out;
    }
    bool operator==(const CondExpr& o) const {
        return is_compare == o.is_compare && var == o.var && op == o.op && lhs == o.lhs &&
               rhs == o.rhs;
    }
};

// ---------------------------------------------------------------------------
// Statements

struct AssignStmt {
    std::string target;
    Expr value;  // never CallExpr; call results are InvokeStmt
    bool operator==(const AssignStmt& o) const { return target == o.target && value == o.value; }
};
struct InvokeStmt {
    CallExpr call;
    std::optional<std::string> target;
    bool operator==(const InvokeStmt& o) const { return call == o.call && target == o.target; }
};
struct CondStmt {
    CondExpr cond;
    std::string then_label;
    std::string else_label;  // always present after normalization
    bool operator==(const CondStmt& o) const {
        return cond == o.cond && then_label == o.then_label && else_label == o.else_label;
    }
};
struct GotoStmt {
    std::string label;
    bool operator==(const GotoStmt& o) const { return label == o.label; }
};
struct ReturnStmt {
    std::optional<std::string> value;
    bool operator==(const ReturnStmt& o) const { return value == o.value; }
};
struct FieldStoreStmt {
    Receiver recv;
    std::string field;
    std::string source;  // local
    bool operator==(const FieldStoreStmt& o) const {
        return recv == o.recv && field == o.field && source == o.source;
    }
};
struct NopStmt {
    bool operator==(const NopStmt&) const { return true; }
};

using StmtForm =
    std::variant<AssignStmt, InvokeStmt, CondStmt, GotoStmt, ReturnStmt, FieldStoreStmt, NopStmt>;

struct Statement {
    int id = 0;  // dense, 0-based per method
    std::optional<std::string> label;
    StmtForm form;

    bool is_terminator() const {
        return std::holds_alternative<CondStmt>(form) || std::holds_alternative<GotoStmt>(form) ||
               std::holds_alternative<ReturnStmt>(form);
    }
    const CallExpr* call() const {
        if (auto* inv = std::get_if<InvokeStmt>(&form)) return &inv->call;
        return nullptr;
    }
    // Local defined by this statement, if any.
    std::optional<std::string> defined_local() const {
        if (auto* a = std::get_if<AssignStmt>(&form)) return a->target;
        if (auto* inv = std::get_if<InvokeStmt>(&form)) return inv->target;
        return std::nullopt;
    }
    // All locals read by this statement (not counting the defined target).
    std::set<std::string> read_locals() const;

    bool operator==(const Statement& o) const { return id == o.id && form == o.form; }
};

inline std::set<std::string> expr_read_locals(const Expr& e) {
    std::set<std::string> out;
    if (auto* l = std::get_if<LocalExpr>(&e)) {
        out.insert(l->name);
    } else if (auto* f = std::get_if<FieldLoadExpr>(&e)) {
        if (f->recv.is_local) out.insert(f->recv.name);
    } else if (auto* b = std::get_if<BinOpExpr>(&e)) {
        if (b->lhs.is_local) out.insert(b->lhs.local);
        if (b->rhs.is_local) out.insert(b->rhs.local);
    } else if (auto* c = std::get_if<CallExpr>(&e)) {
        if (c->receiver) out.insert(*c->receiver);
        for (const auto& a : c->args)
            if (a.is_local) out.insert(a.local);
    }
    return out;
}

inline std::set<std::string> Statement::read_locals() const {
    std::set<std::string> out;
    if (auto* a = std::get_if<AssignStmt>(&form)) {
        out = expr_read_locals(a->value);
    } else if (auto* inv = std::get_if<InvokeStmt>(&form)) {
        if (inv->call.receiver) out.insert(*inv->call.receiver);
        for (const auto& arg : inv->call.args)
            if (arg.is_local) out.insert(arg.local);
    } else if (auto* c = std::get_if<CondStmt>(&form)) {
        out = c->cond.read_locals();
    } else if (auto* r = std::get_if<ReturnStmt>(&form)) {
        if (r->value) out.insert(*r->value);
    } else if (auto* fs = std::get_if<FieldStoreStmt>(&form)) {
        out.insert(fs->source);
        if (fs->recv.is_local) out.insert(fs->recv.name);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Methods, classes, program

enum class MethodKind { Plain, Lifecycle, Callback };

struct Param {
    std::string type;
    std::string name;
    bool operator==(const Param& o) const { return type == o.type && name == o.name; }
};

struct MethodDef {
    std::string owner_class;  // qualified
    std::string name;
    std::string return_type;
    MethodKind kind = MethodKind::Plain;
    std::vector<Param> params;
    std::vector<Param> locals;  // declared `local TYPE IDENT;`
    std::vector<Statement> body;
    std::map<std::string, int> labels;  // label -> statement id

    // Analysis-level key; call references and catalogs identify methods
    // by class#name.
    std::string key() const { return owner_class + "#" + name; }

    bool is_entry_point() const { return kind != MethodKind::Plain; }

    std::optional<int> param_index(const std::string& local) const {
        for (size_t i = 0; i < params.size(); ++i)
            if (params[i].name == local) return static_cast<int>(i);
        return std::nullopt;
    }
    std::optional<std::string> local_type(const std::string& name_) const {
        for (const auto& p : params)
            if (p.name == name_) return p.type;
        for (const auto& l : locals)
            if (l.name == name_) return l.type;
        return std::nullopt;
    }
    bool operator==(const MethodDef& o) const {
        return owner_class == o.owner_class && name == o.name && return_type == o.return_type &&
               kind == o.kind && params == o.params && locals == o.locals && body == o.body &&
               labels == o.labels;
    }
};

struct FieldDef {
    std::string type;
    std::string name;
    bool operator==(const FieldDef& o) const { return type == o.type && name == o.name; }
};

struct ClassDef {
    std::string name;  // qualified
    std::optional<std::string> superclass;
    std::vector<std::string> interfaces;
    std::vector<FieldDef> fields;
    std::vector<MethodDef> methods;
    bool superclass_external = false;  // set during indexing

    bool operator==(const ClassDef& o) const {
        return name == o.name && superclass == o.superclass && interfaces == o.interfaces &&
               fields == o.fields && methods == o.methods;
    }
};

struct Program {
    std::string app_id;
    std::vector<ClassDef> classes;
    std::map<std::string, const MethodDef*> index;  // class#name -> method
    std::map<std::string, const ClassDef*> class_index;
    std::vector<std::string> lint_warnings;

    Program() = default;
    // The indexes point into `classes`, so copies re-index. Moves keep the
    // vector's heap storage and stay valid as-is.
    Program(const Program& o) { *this = o; }
    Program& operator=(const Program& o) {
        if (this == &o) return *this;
        app_id = o.app_id;
        classes = o.classes;
        lint_warnings = o.lint_warnings;
        rebuild_index();
        return *this;
    }
    Program(Program&&) = default;
    Program& operator=(Program&&) = default;

    void rebuild_index() {
        index.clear();
        class_index.clear();
        for (auto& cd : classes) {
            class_index[cd.name] = &cd;
            for (auto& m : cd.methods) index[m.key()] = &m;
        }
    }

    const MethodDef* lookup_method(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? nullptr : it->second;
    }
    const ClassDef* lookup_class(const std::string& name) const {
        auto it = class_index.find(name);
        return it == class_index.end() ? nullptr : it->second;
    }
    size_t statement_count() const {
        size_t n = 0;
        for (const auto& c : classes)
            for (const auto& m : c.methods) n += m.body.size();
        return n;
    }
    size_t method_count() const {
        size_t n = 0;
        for (const auto& c : classes) n += c.methods.size();
        return n;
    }

    // Structural identity: classes, signatures and statement forms in order.
    // app_id and lint output are not part of the structure.
    bool structurally_equal(const Program& o) const { return classes == o.classes; }
};

// Synthetic root connecting entry points; must never leak into reports.
inline const std::string& dummy_main_key() {
    static const std::string k = "<dummy>#<main>";
    return k;
}

}  // namespace hso

#endif  // HSO_IR_HPP
