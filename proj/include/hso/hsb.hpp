#ifndef HSO_HSB_HPP
#define HSO_HSB_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hso/callgraph.hpp"
#include "hso/catalog.hpp"
#include "hso/cfg.hpp"

// Hidden-sensitive-branch location. An arm qualifies when it reaches
// sensitive APIs its sibling does not (rule 1) and shares no locals with the
// condition expression (rule 2).

namespace hso {

struct HsbCandidate {
    BranchSite site;
    bool then_arm = true;  // which arm is the hidden branch B
    std::set<std::string> hsb_apis;      // sensitive APIs reachable from B
    std::set<std::string> sibling_apis;  // sensitive APIs reachable from the other arm
    std::set<std::string> distinctive;   // hsb_apis \ sibling_apis, non-empty

    const std::set<int>& region() const { return then_arm ? site.then_region : site.else_region; }
    const char* arm_name() const { return then_arm ? "then" : "else"; }
};

// Sensitive APIs called in the region or anywhere reachable from its call
// sites; no depth limit.
inline std::set<std::string> collect_branch_sensitive_apis(const Program& p, const CallGraph& cg,
                                                           const ApiCatalog& catalog,
                                                           const std::string& method,
                                                           const std::set<int>& region) {
    std::set<int> call_sites;
    const MethodDef* m = p.lookup_method(method);
    if (!m) return {};
    for (int s : region) {
        if (s >= 0 && s < static_cast<int>(m->body.size()) && m->body[s].call())
            call_sites.insert(s);
    }
    std::set<std::string> out;
    for (const auto& sig : reachable_methods(p, cg, method, call_sites)) {
        if (catalog.is_sensitive(sig)) out.insert(sig);
    }
    return out;
}

struct HsbOptions {
    bool rule2_closure = false;  // extend region vars by intra-method def-use closure
};

struct HsbResult {
    std::vector<HsbCandidate> candidates;
    int branch_sites = 0;
    int skipped_overlapping = 0;
};

namespace detail {

inline std::set<std::string> region_vars(const MethodDef& m, const std::set<int>& region) {
    std::set<std::string> vars;
    for (int s : region) {
        const auto& st = m.body[s];
        auto reads = st.read_locals();
        vars.insert(reads.begin(), reads.end());
        if (auto def = st.defined_local()) vars.insert(*def);
    }
    return vars;
}

// Stricter rule-2 variant: close the region's variable set under the
// method's def-use relation (a var is added when it feeds the definition of
// a var already in the set).
inline std::set<std::string> close_vars(const MethodDef& m, std::set<std::string> vars) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& st : m.body) {
            auto def = st.defined_local();
            if (!def || !vars.count(*def)) continue;
            for (const auto& r : st.read_locals()) {
                if (vars.insert(r).second) changed = true;
            }
        }
    }
    return vars;
}

inline bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a)
        if (b.count(x)) return true;
    return false;
}

}  // namespace detail

inline HsbResult locate_hsbs(const Program& p, const CallGraph& cg, const ApiCatalog& catalog,
                             const HsbOptions& opts = {}) {
    HsbResult res;
    std::vector<const MethodDef*> methods;
    for (const auto& cd : p.classes)
        for (const auto& m : cd.methods) methods.push_back(&m);
    std::sort(methods.begin(), methods.end(),
              [](const MethodDef* a, const MethodDef* b) { return a->key() < b->key(); });

    for (const MethodDef* m : methods) {
        if (m->body.empty()) continue;
        Cfg cfg = build_cfg(*m);
        BranchExtraction ex = extract_branch_sites(cfg);
        res.branch_sites += static_cast<int>(ex.sites.size());
        res.skipped_overlapping += ex.skipped_overlapping;
        for (const auto& site : ex.sites) {
            auto then_apis =
                collect_branch_sensitive_apis(p, cg, catalog, site.method, site.then_region);
            auto else_apis =
                collect_branch_sensitive_apis(p, cg, catalog, site.method, site.else_region);
            for (bool then_arm : {true, false}) {
                const auto& mine = then_arm ? then_apis : else_apis;
                const auto& sibling = then_arm ? else_apis : then_apis;
                std::set<std::string> distinctive;
                std::set_difference(mine.begin(), mine.end(), sibling.begin(), sibling.end(),
                                    std::inserter(distinctive, distinctive.begin()));
                if (distinctive.empty()) continue;  // rule 1
                auto vars = detail::region_vars(*m, then_arm ? site.then_region
                                                             : site.else_region);
                if (opts.rule2_closure) vars = detail::close_vars(*m, std::move(vars));
                if (detail::intersects(site.cond_vars, vars)) continue;  // rule 2
                HsbCandidate cand;
                cand.site = site;
                cand.then_arm = then_arm;
                cand.hsb_apis = mine;
                cand.sibling_apis = sibling;
                cand.distinctive = std::move(distinctive);
                res.candidates.push_back(std::move(cand));
            }
        }
    }
    return res;
}

}  // namespace hso

#endif  // HSO_HSB_HPP
