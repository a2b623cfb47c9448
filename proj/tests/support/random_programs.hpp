#ifndef HSO_TESTS_RANDOM_PROGRAMS_HPP
#define HSO_TESTS_RANDOM_PROGRAMS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

// Seeded well-formed random IR programs for property tests: forward-only
// control flow (structured diamonds, optionally nested once), acyclic call
// structure, every used local declared. Designed to stay within the oracle
// statement budget.

namespace hso::testgen {

struct RandomOptions {
    std::uint64_t seed = 0;
    int methods = 4;           // <= 8
    int max_total_stmts = 46;  // <= oracle guard
    bool nested_diamond = true;
};

class RandomProgram {
public:
    explicit RandomProgram(const RandomOptions& opt) : opt_(opt), eng_(opt.seed) {}

    std::string generate() {
        std::ostringstream out;
        out << "class com.t.A {\n  field int state;\n  field java.lang.String tag;\n";
        int half = (opt_.methods + 1) / 2;
        for (int i = 0; i < half; ++i) emit_method(out, i);
        out << "}\n";
        out << "class com.t.B extends com.t.A {\n";
        for (int i = half; i < opt_.methods; ++i) emit_method(out, i);
        out << "}\n";
        return out.str();
    }

private:
    int pick(int n) { return n <= 1 ? 0 : static_cast<int>(eng_() % n); }

    static std::string cls_of(int idx, int methods) {
        return idx < (methods + 1) / 2 ? "com.t.A" : "com.t.B";
    }

    struct Ctx {
        std::vector<std::string> lines;
        std::set<std::string> init_ints;
        std::set<std::string> init_strs;
        int label = 0;
        int stmts = 0;
    };

    std::string any_int(Ctx& c) {
        if (c.init_ints.empty()) {
            c.lines.push_back("i0 = " + std::to_string(pick(90)) + ";");
            ++c.stmts;
            c.init_ints.insert("i0");
        }
        auto it = c.init_ints.begin();
        std::advance(it, pick(static_cast<int>(c.init_ints.size())));
        return *it;
    }
    std::string any_str(Ctx& c) {
        if (c.init_strs.empty()) {
            c.lines.push_back("s0 = \"x\";");
            ++c.stmts;
            c.init_strs.insert("s0");
        }
        auto it = c.init_strs.begin();
        std::advance(it, pick(static_cast<int>(c.init_strs.size())));
        return *it;
    }
    std::string fresh_int(Ctx& c) {
        std::string v = "i" + std::to_string(pick(4));
        c.init_ints.insert(v);
        return v;
    }
    std::string fresh_str(Ctx& c) {
        std::string v = "s" + std::to_string(pick(3));
        c.init_strs.insert(v);
        return v;
    }

    void simple_stmt(Ctx& c, int method_idx) {
        switch (pick(11)) {
        case 0: {
            std::string t = fresh_int(c);
            c.lines.push_back(t + " = " + any_int(c) + " + " + std::to_string(pick(20)) + ";");
            ++c.stmts;
            break;
        }
        case 1: {
            std::string src = any_int(c);
            std::string t = fresh_int(c);
            c.lines.push_back(t + " = " + src + ";");
            ++c.stmts;
            break;
        }
        case 2: {
            std::string t = fresh_str(c);
            c.lines.push_back(t + " = call static com.ext.Util#describe(" + any_int(c) + ");");
            ++c.stmts;
            break;
        }
        case 3: {  // sensitive source read
            std::string t = fresh_str(c);
            c.lines.push_back("tm = call static com.ext.Svc#telephony();");
            c.lines.push_back(
                t + " = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;");
            c.stmts += 2;
            break;
        }
        case 4: {  // system API read (time)
            std::string t = fresh_int(c);
            c.lines.push_back("cal = call static java.util.Calendar#getInstance();");
            c.lines.push_back(t + " = call virtual java.util.Calendar#get(6) on cal;");
            c.stmts += 2;
            break;
        }
        case 5: {  // system property
            std::string t = fresh_str(c);
            c.lines.push_back(t + " = android.os.Build.MODEL;");
            ++c.stmts;
            break;
        }
        case 6: {  // field traffic
            if (pick(2) == 0) {
                c.lines.push_back("com.t.A.state = " + any_int(c) + ";");
            } else {
                std::string t = fresh_int(c);
                c.lines.push_back(t + " = com.t.A.state;");
            }
            ++c.stmts;
            break;
        }
        case 7: {  // sink call on an initialized string
            std::string s = any_str(c);
            c.lines.push_back("sm = call static android.telephony.SmsManager#getDefault();");
            c.lines.push_back("call virtual android.telephony.SmsManager#sendTextMessage(\"+1\", "
                              "\"c\", " +
                              s + ", \"p\", \"q\") on sm;");
            c.stmts += 2;
            break;
        }
        case 8: {  // external call: receiver tracked, taint not propagated
            std::string t = fresh_str(c);
            c.lines.push_back("ext = call static com.ext.Svc#thing();");
            c.lines.push_back(t + " = call virtual com.ext.Thing#wrap(" + any_str(c) +
                              ") on ext;");
            c.stmts += 2;
            break;
        }
        case 9: {  // call a later method (acyclic)
            if (method_idx + 1 < opt_.methods) {
                int j = method_idx + 1 + pick(opt_.methods - method_idx - 1);
                std::string t = fresh_int(c);
                c.lines.push_back(t + " = call static " + cls_of(j, opt_.methods) + "#m" +
                                  std::to_string(j) + "(" + any_int(c) + ");");
                ++c.stmts;
            } else {
                std::string t = fresh_int(c);
                c.lines.push_back(t + " = " + std::to_string(pick(50)) + ";");
                ++c.stmts;
            }
            break;
        }
        default: {
            std::string t = fresh_str(c);
            c.lines.push_back(t + " = " + any_str(c) + " + \"k\";");
            ++c.stmts;
            break;
        }
        }
    }

    void diamond(Ctx& c, int method_idx, bool allow_nested) {
        int k = c.label++;
        std::string lt = "Lt" + std::to_string(k);
        std::string lj = "Lj" + std::to_string(k);
        std::string le = "Le" + std::to_string(k);
        bool with_else = pick(3) != 0;
        // Mostly gate on a derived value so the backward analysis has a
        // chain to walk; sometimes on a raw local or a callee's result.
        std::string cond = any_int(c);
        int style = pick(4);
        if (style == 3 && method_idx + 1 < opt_.methods) {
            int j = method_idx + 1 + pick(opt_.methods - method_idx - 1);
            std::string t = fresh_int(c);
            c.lines.push_back(t + " = call static " + cls_of(j, opt_.methods) + "#m" +
                              std::to_string(j) + "(" + cond + ");");
            ++c.stmts;
            cond = t;
        } else if (style != 0) {
            std::string chained = fresh_int(c);
            c.lines.push_back(chained + " = " + cond + " + " + std::to_string(pick(9)) + ";");
            ++c.stmts;
            cond = chained;
        }
        c.lines.push_back("if " + cond + " > " + std::to_string(pick(200)) + " goto " + lt +
                          " else " + (with_else ? le : lj) + ";");
        ++c.stmts;
        c.lines.push_back(lt + ":");  // marker, merged with the next line at emit
        int arm = 1 + pick(2);
        for (int a = 0; a < arm; ++a) {
            if (allow_nested && a == 0 && pick(4) == 0) {
                diamond(c, method_idx, false);
            } else {
                simple_stmt(c, method_idx);
            }
        }
        if (pick(5) == 0) {
            c.lines.push_back("return " + any_int(c) + ";");
            ++c.stmts;
        } else {
            c.lines.push_back("goto " + lj + ";");
            ++c.stmts;
        }
        if (with_else) {
            c.lines.push_back(le + ":");
            simple_stmt(c, method_idx);
            c.lines.push_back("goto " + lj + ";");
            ++c.stmts;
        }
        c.lines.push_back(lj + ":");
        c.lines.push_back("nop;");
        ++c.stmts;
    }

    void emit_method(std::ostringstream& out, int idx) {
        Ctx c;
        out << "  plain method int m" << idx << "(int p0) {\n";
        out << "    local int i0;\n    local int i1;\n    local int i2;\n    local int i3;\n";
        out << "    local java.lang.String s0;\n    local java.lang.String s1;\n";
        out << "    local java.lang.String s2;\n";
        out << "    local android.telephony.TelephonyManager tm;\n";
        out << "    local android.telephony.SmsManager sm;\n";
        out << "    local java.util.Calendar cal;\n";
        out << "    local com.ext.Thing ext;\n";
        c.init_ints.insert("p0");
        switch (pick(3)) {
        case 0:
            c.lines.push_back("i0 = " + std::to_string(pick(100)) + ";");
            ++c.stmts;
            c.init_ints.insert("i0");
            break;
        case 1:
            c.lines.push_back("cal = call static java.util.Calendar#getInstance();");
            c.lines.push_back("i0 = call virtual java.util.Calendar#get(11) on cal;");
            c.stmts += 2;
            c.init_ints.insert("i0");
            break;
        default: break;  // parameter-only start
        }
        int budget = std::max(3, (opt_.max_total_stmts - total_) / (opt_.methods - emitted_));
        int want = 2 + pick(std::max(1, budget - 2));
        while (c.stmts < want) {
            int projected = total_ + c.stmts;
            if (projected + 3 >= opt_.max_total_stmts) break;  // reserve the return
            // A nested diamond costs up to ~20 statements; only start one
            // with that much global headroom left.
            if (pick(4) == 0 && projected + 22 < opt_.max_total_stmts && c.label < 3) {
                diamond(c, idx, opt_.nested_diamond);
            } else {
                simple_stmt(c, idx);
            }
        }
        c.lines.push_back("return " + any_int(c) + ";");
        ++c.stmts;
        std::string pending;
        for (const auto& line : c.lines) {
            if (!line.empty() && line.back() == ':') {
                pending += line + " ";
                continue;
            }
            out << "    " << pending << line << "\n";
            pending.clear();
        }
        total_ += c.stmts;
        ++emitted_;
        out << "  }\n";
    }

    RandomOptions opt_;
    std::mt19937_64 eng_;
    int total_ = 0;
    int emitted_ = 0;
};

inline std::string random_ir(const RandomOptions& opt) { return RandomProgram(opt).generate(); }

}  // namespace hso::testgen

#endif  // HSO_TESTS_RANDOM_PROGRAMS_HPP
