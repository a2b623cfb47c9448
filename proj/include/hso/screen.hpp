#ifndef HSO_SCREEN_HPP
#define HSO_SCREEN_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hso/defaults.hpp"
#include "hso/trigger.hpp"

// Conventional-usage screening. A detected operation is conventional only if
// one single rule covers every system origin of its trigger and the rule's
// context constraint holds for the enclosing method; everything else stays
// suspicious. The rule list ships as editable JSON data.

namespace hso {

struct WhitelistError : std::runtime_error {
    explicit WhitelistError(const std::string& msg)
        : std::runtime_error("whitelist error: " + msg) {}
};

struct ConventionalRule {
    std::string category;  // seven built-ins by default; custom names allowed
    std::set<std::string> origin_patterns;
    enum class Context { None, Callback, Lifecycle } context = Context::None;
};

struct HsoFinding {
    TriggerInference inference;
    bool suspicious = true;
    std::string category;  // set when conventional
};

inline std::vector<ConventionalRule> parse_whitelist(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw WhitelistError(e.what());
    }
    if (!j.is_array()) throw WhitelistError("top-level value must be an array of rules");
    std::vector<ConventionalRule> rules;
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& o = j[i];
        std::string at = "rule " + std::to_string(i);
        if (!o.is_object()) throw WhitelistError(at + ": not an object");
        ConventionalRule r;
        if (!o.contains("category") || !o["category"].is_string())
            throw WhitelistError(at + ": missing string 'category'");
        r.category = o["category"].get<std::string>();
        if (r.category.empty()) throw WhitelistError(at + ": empty category");
        if (!o.contains("originPatterns") || !o["originPatterns"].is_array())
            throw WhitelistError(at + ": missing array 'originPatterns'");
        for (const auto& p : o["originPatterns"]) {
            if (!p.is_string()) throw WhitelistError(at + ": originPatterns must be strings");
            r.origin_patterns.insert(p.get<std::string>());
        }
        if (r.origin_patterns.empty()) throw WhitelistError(at + ": originPatterns is empty");
        std::string ctx = o.value("context", "none");
        if (ctx == "none") {
            r.context = ConventionalRule::Context::None;
        } else if (ctx == "callback") {
            r.context = ConventionalRule::Context::Callback;
        } else if (ctx == "lifecycle") {
            r.context = ConventionalRule::Context::Lifecycle;
        } else {
            throw WhitelistError(at + ": unknown context '" + ctx + "'");
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

inline std::vector<ConventionalRule> load_whitelist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw WhitelistError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_whitelist(ss.str());
}

inline std::vector<ConventionalRule> default_whitelist() {
    return parse_whitelist(defaults::kWhitelistJson);
}

namespace detail {

inline bool context_holds(ConventionalRule::Context ctx, const MethodDef* enclosing) {
    switch (ctx) {
    case ConventionalRule::Context::None: return true;
    case ConventionalRule::Context::Callback:
        return enclosing && enclosing->kind == MethodKind::Callback;
    case ConventionalRule::Context::Lifecycle:
        return enclosing && enclosing->kind == MethodKind::Lifecycle;
    }
    return false;
}

}  // namespace detail

// A single rule must cover all system origins; ties between fully-matching
// rules of different categories resolve to the smallest category name.
inline HsoFinding screen_hso(const Program& p, const TriggerInference& inference,
                             const std::vector<ConventionalRule>& rules) {
    HsoFinding f;
    f.inference = inference;
    const MethodDef* enclosing = p.lookup_method(inference.candidate.site.method);
    std::set<std::string> system_origins;
    for (const auto& o : inference.origins)
        if (o.is_system()) system_origins.insert(o.what);
    std::set<std::string> matched;
    for (const auto& r : rules) {
        if (!detail::context_holds(r.context, enclosing)) continue;
        bool all = true;
        for (const auto& o : system_origins) {
            if (!r.origin_patterns.count(o)) {
                all = false;
                break;
            }
        }
        if (all && !system_origins.empty()) matched.insert(r.category);
    }
    if (!matched.empty()) {
        f.suspicious = false;
        f.category = *matched.begin();
    }
    return f;
}

inline std::vector<HsoFinding> screen_all(const Program& p,
                                          const std::vector<TriggerInference>& inferences,
                                          const std::vector<ConventionalRule>& rules) {
    std::vector<HsoFinding> out;
    out.reserve(inferences.size());
    for (const auto& inf : inferences) out.push_back(screen_hso(p, inf, rules));
    return out;
}

}  // namespace hso

#endif  // HSO_SCREEN_HPP
