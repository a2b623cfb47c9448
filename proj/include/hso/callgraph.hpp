#ifndef HSO_CALLGRAPH_HPP
#define HSO_CALLGRAPH_HPP

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "hso/ir.hpp"

// Class-hierarchy call graph. A synthetic dummy main calls every lifecycle
// and callback method so the whole program hangs off a single root. Virtual
// calls resolve to the nearest inherited definition of the static target
// class plus every override in its subclasses (CHA over-approximation);
// unresolvable callees become external sink nodes.

namespace hso {

struct CallEdge {
    std::string caller;  // class#name
    int site = 0;        // call-site statement id in the caller
    std::string callee;

    bool operator<(const CallEdge& o) const {
        if (caller != o.caller) return caller < o.caller;
        if (site != o.site) return site < o.site;
        return callee < o.callee;
    }
    bool operator==(const CallEdge& o) const {
        return caller == o.caller && site == o.site && callee == o.callee;
    }
};

struct CallGraph {
    std::set<std::string> nodes;     // internal and external
    std::vector<CallEdge> edges;     // sorted
    std::string dummy_main = dummy_main_key();
    std::map<std::string, std::vector<const CallEdge*>> by_caller;

    void finalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        by_caller.clear();
        for (const auto& e : edges) by_caller[e.caller].push_back(&e);
    }

    std::vector<const CallEdge*> edges_from(const std::string& caller) const {
        auto it = by_caller.find(caller);
        return it == by_caller.end() ? std::vector<const CallEdge*>{} : it->second;
    }
};

namespace detail {

// Superclass chain of `cls` by name; stops after the first external name.
inline std::vector<std::string> ancestor_names(const Program& p, const std::string& cls) {
    std::vector<std::string> out;
    const ClassDef* cur = p.lookup_class(cls);
    while (cur && cur->superclass) {
        out.push_back(*cur->superclass);
        cur = p.lookup_class(*cur->superclass);
    }
    return out;
}

inline bool class_defines(const ClassDef& cd, const std::string& method) {
    for (const auto& m : cd.methods)
        if (m.name == method) return true;
    return false;
}

inline std::set<std::string> resolve_virtual(const Program& p, const std::string& base,
                                             const std::string& method) {
    std::set<std::string> targets;
    // Nearest definition walking up from the static target class.
    const ClassDef* cur = p.lookup_class(base);
    bool found_up = false;
    while (cur) {
        if (class_defines(*cur, method)) {
            targets.insert(cur->name + "#" + method);
            found_up = true;
            break;
        }
        cur = cur->superclass ? p.lookup_class(*cur->superclass) : nullptr;
    }
    if (!found_up) targets.insert(base + "#" + method);  // external or inherited-unknown
    // Every override below the static target class.
    for (const auto& cd : p.classes) {
        if (cd.name == base) continue;
        auto ancestors = ancestor_names(p, cd.name);
        if (std::find(ancestors.begin(), ancestors.end(), base) == ancestors.end()) continue;
        if (class_defines(cd, method)) targets.insert(cd.name + "#" + method);
    }
    return targets;
}

}  // namespace detail

inline CallGraph build_callgraph(const Program& p) {
    CallGraph cg;
    cg.nodes.insert(cg.dummy_main);

    std::vector<std::string> entry_points;
    for (const auto& cd : p.classes) {
        for (const auto& m : cd.methods) {
            cg.nodes.insert(m.key());
            if (m.is_entry_point()) entry_points.push_back(m.key());
        }
    }
    std::sort(entry_points.begin(), entry_points.end());
    for (size_t i = 0; i < entry_points.size(); ++i)
        cg.edges.push_back({cg.dummy_main, static_cast<int>(i), entry_points[i]});

    for (const auto& cd : p.classes) {
        for (const auto& m : cd.methods) {
            for (const auto& st : m.body) {
                const CallExpr* call = st.call();
                if (!call) continue;
                std::set<std::string> targets;
                if (call->kind == CallKind::Virtual) {
                    targets = detail::resolve_virtual(p, call->callee_class, call->callee_name);
                } else {
                    targets.insert(call->callee_key());
                }
                for (const auto& t : targets) {
                    cg.nodes.insert(t);
                    cg.edges.push_back({m.key(), st.id, t});
                }
            }
        }
    }
    cg.finalize();
    return cg;
}

// Transitive closure of callees from the given call sites of one method.
// External callees are included but never expanded.
inline std::set<std::string> reachable_methods(const Program& p, const CallGraph& cg,
                                               const std::string& method,
                                               const std::set<int>& root_sites) {
    std::set<std::string> seen;
    std::queue<std::string> work;
    for (const CallEdge* e : cg.edges_from(method)) {
        if (!root_sites.count(e->site)) continue;
        if (seen.insert(e->callee).second) work.push(e->callee);
    }
    while (!work.empty()) {
        std::string cur = work.front();
        work.pop();
        if (!p.lookup_method(cur)) continue;  // external: graph sink
        for (const CallEdge* e : cg.edges_from(cur)) {
            if (seen.insert(e->callee).second) work.push(e->callee);
        }
    }
    return seen;
}

}  // namespace hso

#endif  // HSO_CALLGRAPH_HPP
