#ifndef HSO_CORPUS_HPP
#define HSO_CORPUS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hso/catalog.hpp"

// Synthetic IR programs with planted ground truth: hidden operations at
// chosen trigger categories and indirection depths, conventional usages, and
// source-to-sink flows inside hidden branches. Generation is a pure function
// of the plant spec; the ground truth is the generator's construction record.

namespace hso {

struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& msg) : std::runtime_error("spec error: " + msg) {}
};

struct MismatchError : std::runtime_error {
    explicit MismatchError(const std::string& msg)
        : std::runtime_error("mismatch error: " + msg) {}
};

struct PlantedHso {
    std::string category;  // trigger category name
    std::string api;       // distinctive sensitive API signature
    int depth = 0;         // helper-method indirection, 0..3
};

struct PlantSpec {
    std::uint64_t seed = 0;
    int methods = 0;  // filler methods
    std::pair<int, int> stmts_per_method{3, 8};
    std::vector<PlantedHso> planted_hsos;
    std::vector<std::string> planted_conventional;
    int planted_flows = 0;
};

struct GroundTruthHso {
    std::string method;
    int cond_stmt = 0;
    std::string arm;  // "then" | "else"
    std::string category;
};

struct GroundTruth {
    std::string app_id = "app";
    std::vector<GroundTruthHso> hsos;  // expected suspicious
    std::vector<std::string> conventional;
    int hsdf_count = 0;
};

inline PlantSpec plant_spec_from_json(const nlohmann::json& j) {
    PlantSpec s;
    if (!j.is_object()) throw SpecError("spec must be a JSON object");
    s.seed = j.value("seed", std::uint64_t{0});
    s.methods = j.value("methods", 0);
    if (s.methods < 0) throw SpecError("methods must be >= 0");
    if (j.contains("stmtsPerMethod")) {
        auto r = j["stmtsPerMethod"];
        if (!r.is_array() || r.size() != 2) throw SpecError("stmtsPerMethod must be [lo, hi]");
        s.stmts_per_method = {r[0].get<int>(), r[1].get<int>()};
        if (s.stmts_per_method.first < 1 || s.stmts_per_method.second < s.stmts_per_method.first)
            throw SpecError("bad stmtsPerMethod range");
    }
    for (const auto& ph : j.value("plantedHsos", nlohmann::json::array())) {
        PlantedHso h;
        h.category = ph.value("category", "");
        h.api = ph.value("api", "");
        h.depth = ph.value("depth", 0);
        if (!trigger_category_of(h.category))
            throw SpecError("unknown trigger category '" + h.category + "'");
        if (h.api.empty() || h.api.find('#') == std::string::npos)
            throw SpecError("plantedHsos entry needs an api signature");
        if (h.depth < 0 || h.depth > 3) throw SpecError("depth must be in 0..3");
        s.planted_hsos.push_back(std::move(h));
    }
    for (const auto& c : j.value("plantedConventional", nlohmann::json::array()))
        s.planted_conventional.push_back(c.get<std::string>());
    s.planted_flows = j.value("plantedFlows", 0);
    if (s.planted_flows < 0) throw SpecError("plantedFlows must be >= 0");
    return s;
}

namespace corpus_detail {

// Bounded ints straight off the engine; std::uniform_int_distribution is not
// byte-stable across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(eng_() % n); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 eng_;
};

struct TriggerChain {
    std::vector<std::string> locals;  // "type name" declarations
    std::vector<std::string> stmts;
    std::string cond;  // condexpr text over the chain's result
};

// Condition chain for one trigger category; `tag` uniquifies local names.
inline TriggerChain trigger_chain(const std::string& category, const std::string& tag) {
    TriggerChain c;
    auto L = [&](const char* s) { return s + tag; };
    if (category == "Time") {
        c.locals = {"java.util.Calendar " + L("cal"), "int " + L("day")};
        c.stmts = {L("cal") + " = call static java.util.Calendar#getInstance();",
                   L("day") + " = call virtual java.util.Calendar#get(6) on " + L("cal") + ";"};
        c.cond = L("day") + " > 180";
    } else if (category == "SystemProperties") {
        c.locals = {"java.lang.String " + L("model"), "bool " + L("emu")};
        c.stmts = {L("model") + " = android.os.Build.MODEL;",
                   L("emu") + " = call virtual java.lang.String#contains(\"sdk\") on " +
                       L("model") + ";"};
        c.cond = L("emu");
    } else if (category == "Location") {
        c.locals = {"android.telephony.TelephonyManager " + L("tm"),
                    "java.lang.String " + L("iso"), "bool " + L("hit")};
        c.stmts = {L("tm") + " = call static com.ext.Services#telephony();",
                   L("iso") + " = call virtual android.telephony.TelephonyManager#" +
                       "getSimCountryIso() on " + L("tm") + ";",
                   L("hit") + " = call virtual java.lang.String#equals(\"MY\") on " + L("iso") +
                       ";"};
        c.cond = L("hit");
    } else if (category == "SMS") {
        c.locals = {"android.telephony.SmsMessage " + L("msg"), "java.lang.String " + L("addr"),
                    "bool " + L("pre")};
        c.stmts = {L("msg") + " = call static com.ext.Services#sms();",
                   L("addr") + " = call virtual android.telephony.SmsMessage#" +
                       "getOriginatingAddress() on " + L("msg") + ";",
                   L("pre") + " = call virtual java.lang.String#startsWith(\"10\") on " +
                       L("addr") + ";"};
        c.cond = L("pre");
    } else if (category == "PackageManager") {
        c.locals = {"android.content.pm.PackageManager " + L("pm"), "java.util.List " + L("apps"),
                    "int " + L("n")};
        c.stmts = {L("pm") + " = call static com.ext.Services#packages();",
                   L("apps") + " = call virtual android.content.pm.PackageManager#" +
                       "getInstalledPackages(0) on " + L("pm") + ";",
                   L("n") + " = call virtual java.util.List#size() on " + L("apps") + ";"};
        c.cond = L("n") + " == 0";
    } else if (category == "Miscellaneous") {
        c.locals = {"android.app.KeyguardManager " + L("kg"), "bool " + L("locked")};
        c.stmts = {L("kg") + " = call static com.ext.Services#keyguard();",
                   L("locked") + " = call virtual android.app.KeyguardManager#" +
                       "isKeyguardLocked() on " + L("kg") + ";"};
        c.cond = L("locked");
    } else {
        throw SpecError("no trigger chain for category '" + category + "'");
    }
    return c;
}

inline std::string conventional_method(const std::string& category) {
    std::ostringstream m;
    if (category == "SdkVersion") {
        m << "  plain method void gate(android.webkit.WebView wv) {\n"
             "    local int v;\n"
             "    v = android.os.Build$VERSION.SDK_INT;\n"
             "    if v < 17 goto Lold else Lnew;\n"
             "    Lold: call static android.util.Log#e(\"hw\", \"disabled\");\n"
             "    goto Lend;\n"
             "    Lnew: call virtual android.webkit.WebView#addJavascriptInterface(\"o\", "
             "\"bridge\") on wv;\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "UserInterface") {
        m << "  callback method void onClick(android.view.View v) {\n"
             "    local android.view.View back;\n"
             "    local android.webkit.WebView wv;\n"
             "    local int id1;\n    local int id2;\n"
             "    back = call static com.ext.Ui#backButton();\n"
             "    wv = call static com.ext.Ui#webView();\n"
             "    id1 = call virtual android.view.View#getId() on v;\n"
             "    id2 = call virtual android.view.View#getId() on back;\n"
             "    if id1 == id2 goto Lgo else Lend;\n"
             "    Lgo: call virtual android.webkit.WebView#goBack() on wv;\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "File") {
        m << "  plain method void copyOut(java.io.FileOutputStream os) {\n"
             "    local java.io.File dir;\n"
             "    local bool ex;\n"
             "    dir = call static android.os.Environment#getExternalStorageDirectory();\n"
             "    ex = call virtual java.io.File#exists() on dir;\n"
             "    if ex goto Lw else Lend;\n"
             "    Lw: call virtual java.io.FileOutputStream#write(8192) on os;\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "Permission") {
        m << "  plain method void readPhone(android.content.Context ctx) {\n"
             "    local android.telephony.TelephonyManager tm;\n"
             "    local java.lang.String imei;\n"
             "    local int granted;\n"
             "    tm = call static com.ext.Services#telephony();\n"
             "    granted = call virtual android.content.Context#checkSelfPermission("
             "\"android.permission.READ_PHONE_STATE\") on ctx;\n"
             "    if granted == 0 goto Lread else Lask;\n"
             "    Lread: imei = call virtual android.telephony.TelephonyManager#getDeviceId() "
             "on tm;\n"
             "    goto Lend;\n"
             "    Lask: call static androidx.core.app.ActivityCompat#requestPermissions("
             "\"android.permission.READ_PHONE_STATE\", 7);\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "Network") {
        m << "  plain method void syncIfWifi(android.net.ConnectivityManager cm, "
             "android.net.wifi.WifiManager wm) {\n"
             "    local android.net.NetworkInfo ni;\n"
             "    local int t;\n"
             "    ni = call virtual android.net.ConnectivityManager#getActiveNetworkInfo() on "
             "cm;\n"
             "    t = call virtual android.net.NetworkInfo#getType() on ni;\n"
             "    if t == 1 goto Lwifi else Lend;\n"
             "    Lwifi: call virtual android.net.wifi.WifiManager#getDhcpInfo() on wm;\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "Intent") {
        m << "  callback method void onReceive(android.content.Context c, "
             "android.content.Intent intent) {\n"
             "    local android.net.ConnectivityManager cm;\n"
             "    local java.lang.String action;\n"
             "    local bool hit;\n"
             "    cm = call static com.ext.Services#connectivity();\n"
             "    action = call virtual android.content.Intent#getAction() on intent;\n"
             "    hit = call virtual java.lang.String#equalsIgnoreCase("
             "\"android.net.conn.CONNECTIVITY_CHANGE\") on action;\n"
             "    if hit goto Lnet else Lend;\n"
             "    Lnet: call virtual android.net.ConnectivityManager#getActiveNetworkInfo() on "
             "cm;\n"
             "    Lend: return;\n"
             "  }\n";
    } else if (category == "SharedPreferences") {
        m << "  plain method void maybeVpn(android.content.Context ctx) {\n"
             "    local android.content.SharedPreferences sp;\n"
             "    local int flag;\n"
             "    sp = call virtual android.content.Context#getSharedPreferences(\"SP\", 0) on "
             "ctx;\n"
             "    flag = call virtual android.content.SharedPreferences#getInt(\"VPNFlag\", 1) "
             "on sp;\n"
             "    if flag == 1 goto Lvpn else Lend;\n"
             "    Lvpn: call static android.net.VpnService#prepare();\n"
             "    Lend: return;\n"
             "  }\n";
    } else {
        throw SpecError("unknown conventional category '" + category + "'");
    }
    return m.str();
}

}  // namespace corpus_detail

struct GeneratedProgram {
    std::string ir_text;
    GroundTruth truth;
};

inline GeneratedProgram gen_program(const PlantSpec& spec) {
    using corpus_detail::Rng;
    using corpus_detail::trigger_chain;
    Rng rng(spec.seed);
    std::ostringstream out;
    GroundTruth truth;

    int flows_left = spec.planted_flows;
    if (flows_left > 0 && spec.planted_hsos.empty())
        throw SpecError("plantedFlows requires at least one planted HSO");

    for (size_t pi = 0; pi < spec.planted_hsos.size(); ++pi) {
        const auto& plant = spec.planted_hsos[pi];
        std::string cls = "com.gen.Hso" + std::to_string(pi);
        out << "class " << cls << " {\n";

        // Helper chain for depth > 0; helpers above the deepest one have two
        // return sites, exercising multi-return tracking.
        if (plant.depth > 0) {
            for (int d = 1; d <= plant.depth; ++d) {
                corpus_detail::TriggerChain hc = trigger_chain(plant.category, std::to_string(d));
                out << "  plain method bool h" << d << "() {\n";
                for (const auto& l : hc.locals) out << "    local " << l << ";\n";
                out << "    local bool r" << d << ";\n";
                if (d < plant.depth) out << "    local bool deep" << d << ";\n";
                for (const auto& s : hc.stmts) out << "    " << s << "\n";
                out << "    r" << d << " = " << hc.cond << ";\n";
                if (d < plant.depth) {
                    out << "    if r" << d << " goto Ldeep else Lflat;\n";
                    out << "    Ldeep: deep" << d << " = call static " << cls << "#h" << (d + 1)
                        << "();\n";
                    out << "    return deep" << d << ";\n";
                    out << "    Lflat: return r" << d << ";\n";
                } else {
                    out << "    return r" << d << ";\n";
                }
                out << "  }\n";
            }
        }

        // The gated method; statement ids are tracked while emitting so the
        // ground truth records the exact conditional.
        int flows_here = 0;
        if (flows_left > 0) {
            flows_here = (pi + 1 == spec.planted_hsos.size())
                             ? flows_left
                             : rng.range(0, std::min(flows_left, 2));
            flows_left -= flows_here;
        }
        out << "  plain method void run() {\n";
        std::ostringstream body;
        int id = 0;
        corpus_detail::TriggerChain chain = trigger_chain(plant.category, "0");
        if (plant.depth > 0) {
            out << "    local bool armed;\n";
            body << "    armed = call static " << cls << "#h1();\n";
            ++id;
            truth.hsos.push_back({cls + "#run", id, "then", plant.category});
            body << "    if armed goto Larm else Lend;\n";
            ++id;
        } else {
            for (const auto& l : chain.locals) out << "    local " << l << ";\n";
            for (const auto& s : chain.stmts) {
                body << "    " << s << "\n";
                ++id;
            }
            truth.hsos.push_back({cls + "#run", id, "then", plant.category});
            body << "    if " << chain.cond << " goto Larm else Lend;\n";
            ++id;
        }
        out << "    local " << plant.api.substr(0, plant.api.find('#')) << " dev;\n";
        for (int f = 0; f < flows_here; ++f) {
            std::string sfx = std::to_string(f);
            out << "    local android.telephony.TelephonyManager leakT" << sfx << ";\n";
            out << "    local android.telephony.SmsManager leakS" << sfx << ";\n";
            out << "    local java.lang.String leakV" << sfx << ";\n";
            out << "    local java.lang.String leakC" << sfx << ";\n";
        }
        body << "    Larm: dev = call static com.ext.Services#lookup();\n";
        ++id;
        body << "    call virtual " << plant.api << "() on dev;\n";
        ++id;
        for (int f = 0; f < flows_here; ++f) {
            std::string sfx = std::to_string(f);
            body << "    leakT" << sfx << " = call static com.ext.Services#telephony();\n";
            ++id;
            body << "    leakS" << sfx << " = call static com.ext.Services#sms();\n";
            ++id;
            body << "    leakV" << sfx
                 << " = call virtual android.telephony.TelephonyManager#getDeviceId() on leakT"
                 << sfx << ";\n";
            ++id;
            body << "    leakC" << sfx << " = leakV" << sfx << ";\n";
            ++id;
            body << "    call virtual android.telephony.SmsManager#sendTextMessage(\"+1\", "
                 << "\"c\", leakC" << sfx << ", \"p\", \"q\") on leakS" << sfx << ";\n";
            ++id;
            ++truth.hsdf_count;
        }
        body << "    goto Lend;\n";
        ++id;
        body << "    Lend: return;\n";
        ++id;
        out << body.str();
        out << "  }\n";
        out << "}\n";
    }

    for (size_t ci = 0; ci < spec.planted_conventional.size(); ++ci) {
        const std::string& cat = spec.planted_conventional[ci];
        std::string cls = "com.gen.Conv" + std::to_string(ci);
        out << "class " << cls << " {\n" << corpus_detail::conventional_method(cat) << "}\n";
        truth.conventional.push_back(cat);
    }

    for (int mi = 0; mi < spec.methods; ++mi) {
        std::string cls = "com.gen.Fill" + std::to_string(mi);
        out << "class " << cls << " {\n";
        out << "  plain method int work(int seed) {\n";
        out << "    local int a;\n    local int b;\n    local java.lang.String s;\n";
        int want = rng.range(spec.stmts_per_method.first, spec.stmts_per_method.second);
        out << "    a = seed + " << rng.below(100) << ";\n";
        out << "    b = seed * 2;\n";
        int emitted = 2;
        int label = 0;
        while (emitted + 1 < want) {
            switch (rng.below(4)) {
            case 0:
                out << "    b = a * " << rng.range(2, 9) << ";\n";
                ++emitted;
                break;
            case 1:
                out << "    a = b + " << rng.below(50) << ";\n";
                ++emitted;
                break;
            case 2:
                out << "    s = call static com.ext.Util#describe(a);\n";
                ++emitted;
                break;
            default:
                out << "    if a > " << rng.below(1000) << " goto Lf" << label << " else Lf"
                    << label << ";\n";
                out << "    Lf" << label << ": b = a + 1;\n";
                ++label;
                emitted += 2;
                break;
            }
        }
        out << "    return a;\n";
        out << "  }\n}\n";
        (void)cls;
    }

    GeneratedProgram g;
    g.ir_text = out.str();
    g.truth = std::move(truth);
    return g;
}

inline nlohmann::json truth_to_json(const GroundTruth& t) {
    nlohmann::json hsos = nlohmann::json::array();
    for (const auto& h : t.hsos)
        hsos.push_back({{"method", h.method},
                        {"condStmt", h.cond_stmt},
                        {"arm", h.arm},
                        {"category", h.category}});
    nlohmann::json conv = nlohmann::json::array();
    for (const auto& c : t.conventional) conv.push_back(c);
    return nlohmann::json{
        {"appId", t.app_id}, {"hsos", hsos}, {"conventional", conv}, {"hsdfCount", t.hsdf_count}};
}

inline GroundTruth truth_from_json(const nlohmann::json& j) {
    GroundTruth t;
    t.app_id = j.value("appId", "app");
    for (const auto& h : j.value("hsos", nlohmann::json::array()))
        t.hsos.push_back({h.value("method", ""), h.value("condStmt", 0), h.value("arm", "then"),
                          h.value("category", "")});
    for (const auto& c : j.value("conventional", nlohmann::json::array()))
        t.conventional.push_back(c.get<std::string>());
    t.hsdf_count = j.value("hsdfCount", 0);
    return t;
}

struct ScoreResult {
    double precision = 1.0;
    double recall = 1.0;
    double category_accuracy = 1.0;
    int true_positives = 0;
    int false_positives = 0;
    int false_negatives = 0;
    std::map<std::string, std::map<std::string, int>> confusion;  // expected -> detected -> n
};

// Precision/recall over (method, condStmt, arm) triples of suspicious
// findings, plus a category confusion matrix over the matched ones.
inline ScoreResult score(const nlohmann::json& report, const GroundTruth& truth) {
    if (report.value("appId", "") != truth.app_id)
        throw MismatchError("report appId '" + report.value("appId", "") +
                            "' does not match truth appId '" + truth.app_id + "'");
    struct Det {
        std::string method;
        int cond;
        std::string arm;
        std::vector<std::string> categories;
    };
    std::vector<Det> detected;
    for (const auto& h : report.value("hsos", nlohmann::json::array())) {
        if (h.value("verdict", "") != "suspicious") continue;
        Det d;
        d.method = h.value("method", "");
        d.cond = h.value("condStmt", 0);
        d.arm = h.value("arm", "");
        for (const auto& c : h["trigger"].value("categories", nlohmann::json::array()))
            d.categories.push_back(c.get<std::string>());
        detected.push_back(std::move(d));
    }
    ScoreResult r;
    int matched_categories = 0;
    std::set<size_t> used;
    for (const auto& exp : truth.hsos) {
        bool found = false;
        for (size_t i = 0; i < detected.size(); ++i) {
            const auto& d = detected[i];
            if (used.count(i)) continue;
            if (d.method == exp.method && d.cond == exp.cond_stmt && d.arm == exp.arm) {
                used.insert(i);
                found = true;
                std::string got = d.categories.size() == 1 ? d.categories[0]
                                  : d.categories.empty()   ? "none"
                                                           : "multiple";
                ++r.confusion[exp.category][got];
                if (got == exp.category) ++matched_categories;
                break;
            }
        }
        if (found) {
            ++r.true_positives;
        } else {
            ++r.false_negatives;
        }
    }
    r.false_positives = static_cast<int>(detected.size()) - static_cast<int>(used.size());
    int det_total = static_cast<int>(detected.size());
    r.precision = det_total == 0 ? 1.0 : static_cast<double>(r.true_positives) / det_total;
    r.recall = truth.hsos.empty()
                   ? 1.0
                   : static_cast<double>(r.true_positives) / static_cast<double>(truth.hsos.size());
    r.category_accuracy = r.true_positives == 0
                              ? 1.0
                              : static_cast<double>(matched_categories) / r.true_positives;
    return r;
}

inline nlohmann::json score_to_json(const ScoreResult& r) {
    nlohmann::json conf = nlohmann::json::object();
    for (const auto& [exp, row] : r.confusion) {
        nlohmann::json jrow = nlohmann::json::object();
        for (const auto& [got, n] : row) jrow[got] = n;
        conf[exp] = jrow;
    }
    return nlohmann::json{{"precision", r.precision},
                          {"recall", r.recall},
                          {"categoryAccuracy", r.category_accuracy},
                          {"truePositives", r.true_positives},
                          {"falsePositives", r.false_positives},
                          {"falseNegatives", r.false_negatives},
                          {"confusion", conf}};
}

}  // namespace hso

#endif  // HSO_CORPUS_HPP
