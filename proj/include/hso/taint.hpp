#ifndef HSO_TAINT_HPP
#define HSO_TAINT_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hso/callgraph.hpp"
#include "hso/catalog.hpp"
#include "hso/screen.hpp"

// Forward taint analysis from source APIs to sink arguments. Flow-sensitive
// on locals (strong updates), object-coarse on fields (a store to C#f taints
// every load of C#f), context-insensitive across calls. Witness paths are
// shortest by edge count with statement-id tie-breaks; propagation runs as a
// breadth-first search per source call site, which yields both at once.

namespace hso {

struct TaintFlow {
    std::string source_method;
    int source_stmt = 0;
    std::string source_sig;
    std::string sink_method;
    int sink_stmt = 0;
    std::string sink_sig;
    int arg_index = 0;
    std::vector<std::pair<std::string, int>> path;  // (method key, stmt id)

    bool operator<(const TaintFlow& o) const {
        return std::tie(source_method, source_stmt, sink_method, sink_stmt, arg_index) <
               std::tie(o.source_method, o.source_stmt, o.sink_method, o.sink_stmt, o.arg_index);
    }
};

struct HsdfFinding {
    TaintFlow flow;
    int hso_index = 0;  // index into the screened findings list
};

namespace detail {

struct FieldLoadSite {
    const MethodDef* method;
    int stmt;
    std::string target;
};

class TaintEngine {
public:
    TaintEngine(const Program& p, const CallGraph& cg, const ApiCatalog& catalog,
                ApiCatalog::SourceMode mode)
        : p_(p), cg_(cg), catalog_(catalog), sources_(catalog.sources(mode)) {
        index_program();
    }

    std::vector<TaintFlow> run() {
        std::vector<TaintFlow> flows;
        for (const auto& [mk, stmt, target, sig] : source_sites_) {
            auto found = bfs_from_source(mk, stmt, target, sig);
            flows.insert(flows.end(), found.begin(), found.end());
        }
        std::sort(flows.begin(), flows.end());
        return flows;
    }

private:
    struct Node {
        bool is_field = false;
        std::string method;  // local facts
        int def_site = -1;   // -1: parameter, tainted at entry
        std::string var;
        std::string field_key;  // field facts
        int parent = -1;
        std::pair<std::string, int> waypoint;
    };

    void index_program() {
        for (const auto& cd : p_.classes) {
            for (const auto& m : cd.methods) {
                for (const auto& st : m.body) {
                    if (auto* a = std::get_if<AssignStmt>(&st.form)) {
                        if (auto* fl = std::get_if<FieldLoadExpr>(&a->value)) {
                            std::string key = field_key(p_, m, fl->recv, fl->field);
                            field_loads_[key].push_back({&m, st.id, a->target});
                        }
                    }
                    const CallExpr* call = st.call();
                    if (call && sources_.count(call->callee_key())) {
                        auto* inv = std::get_if<InvokeStmt>(&st.form);
                        if (inv->target)
                            source_sites_.push_back(
                                {m.key(), st.id, *inv->target, call->callee_key()});
                    }
                }
            }
        }
        std::sort(source_sites_.begin(), source_sites_.end());
        for (auto& [key, loads] : field_loads_) {
            std::sort(loads.begin(), loads.end(), [](const auto& a, const auto& b) {
                return std::tie(a.method->owner_class, a.method->name, a.stmt) <
                       std::tie(b.method->owner_class, b.method->name, b.stmt);
            });
        }
        for (const auto& e : cg_.edges) edges_to_[e.callee].push_back(&e);
    }

    // Statements reading `var` that the definition at `def_site` reaches
    // (def_site == -1 means the parameter value live at entry).
    std::vector<int> forward_uses(const MethodDef& m, int def_site, const std::string& var) {
        std::vector<int> uses;
        std::set<int> seen;
        std::deque<int> frontier;
        int exit_id = static_cast<int>(m.body.size());
        auto& succ = successors(m);
        if (def_site < 0) {
            if (!m.body.empty()) frontier.push_back(0);
        } else {
            for (int s : succ[def_site])
                if (s != exit_id) frontier.push_back(s);
        }
        while (!frontier.empty()) {
            int t = frontier.front();
            frontier.pop_front();
            if (!seen.insert(t).second) continue;
            const Statement& st = m.body[t];
            if (st.read_locals().count(var)) uses.push_back(t);
            auto def = st.defined_local();
            if (def && *def == var) continue;  // strong update kills the chain
            for (int s : succ[t])
                if (s != exit_id) frontier.push_back(s);
        }
        std::sort(uses.begin(), uses.end());
        return uses;
    }

    std::vector<TaintFlow> bfs_from_source(const std::string& mk, int stmt,
                                           const std::string& target, const std::string& sig) {
        std::vector<TaintFlow> flows;
        std::set<std::tuple<std::string, int, int>> sink_seen;  // (sink method, stmt, arg)
        std::vector<Node> nodes;
        std::set<std::tuple<std::string, int, std::string>> local_seen;
        std::set<std::string> field_seen;
        std::deque<int> queue;

        Node root;
        root.method = mk;
        root.def_site = stmt;
        root.var = target;
        root.waypoint = {mk, stmt};
        nodes.push_back(root);
        local_seen.insert({mk, stmt, target});
        queue.push_back(0);

        auto path_of = [&](int node, std::pair<std::string, int> last) {
            std::vector<std::pair<std::string, int>> path;
            for (int i = node; i >= 0; i = nodes[i].parent) path.push_back(nodes[i].waypoint);
            std::reverse(path.begin(), path.end());
            if (path.empty() || path.back() != last) path.push_back(last);
            return path;
        };
        auto add_local = [&](int parent, const std::string& m2, int site, const std::string& v,
                             std::pair<std::string, int> wp) {
            if (!local_seen.insert({m2, site, v}).second) return;
            Node n;
            n.method = m2;
            n.def_site = site;
            n.var = v;
            n.parent = parent;
            n.waypoint = std::move(wp);
            nodes.push_back(n);
            queue.push_back(static_cast<int>(nodes.size()) - 1);
        };
        auto add_field = [&](int parent, const std::string& key, std::pair<std::string, int> wp) {
            if (!field_seen.insert(key).second) return;
            Node n;
            n.is_field = true;
            n.field_key = key;
            n.parent = parent;
            n.waypoint = std::move(wp);
            nodes.push_back(n);
            queue.push_back(static_cast<int>(nodes.size()) - 1);
        };

        while (!queue.empty()) {
            int ni = queue.front();
            queue.pop_front();
            Node cur = nodes[ni];

            if (cur.is_field) {
                auto it = field_loads_.find(cur.field_key);
                if (it == field_loads_.end()) continue;
                for (const auto& load : it->second)
                    add_local(ni, load.method->key(), load.stmt, load.target,
                              {load.method->key(), load.stmt});
                continue;
            }

            const MethodDef& m = *p_.lookup_method(cur.method);
            for (int t : forward_uses(m, cur.def_site, cur.var)) {
                const Statement& st = m.body[t];
                if (auto* a = std::get_if<AssignStmt>(&st.form)) {
                    bool feeds = false;
                    if (auto* l = std::get_if<LocalExpr>(&a->value)) {
                        feeds = l->name == cur.var;
                    } else if (auto* b = std::get_if<BinOpExpr>(&a->value)) {
                        feeds = (b->lhs.is_local && b->lhs.local == cur.var) ||
                                (b->rhs.is_local && b->rhs.local == cur.var);
                    }
                    if (feeds) add_local(ni, cur.method, t, a->target, {cur.method, t});
                } else if (auto* fs = std::get_if<FieldStoreStmt>(&st.form)) {
                    if (fs->source == cur.var)
                        add_field(ni, field_key(p_, m, fs->recv, fs->field), {cur.method, t});
                } else if (auto* r = std::get_if<ReturnStmt>(&st.form)) {
                    if (r->value && *r->value == cur.var) {
                        for (const CallEdge* e : edges_to_[cur.method]) {
                            if (e->caller == cg_.dummy_main) continue;
                            const MethodDef* caller = p_.lookup_method(e->caller);
                            if (!caller) continue;
                            auto* inv = std::get_if<InvokeStmt>(&caller->body[e->site].form);
                            if (inv && inv->target)
                                add_local(ni, e->caller, e->site, *inv->target,
                                          {e->caller, e->site});
                        }
                    }
                } else if (auto* inv = std::get_if<InvokeStmt>(&st.form)) {
                    const CallExpr& call = inv->call;
                    const std::string key = call.callee_key();
                    bool is_sink = catalog_.is_sink(key);
                    for (size_t i = 0; i < call.args.size(); ++i) {
                        if (!call.args[i].is_local || call.args[i].local != cur.var) continue;
                        int idx = static_cast<int>(i);
                        if (is_sink && sink_seen.insert({cur.method, t, idx}).second) {
                            TaintFlow flow;
                            flow.source_method = mk;
                            flow.source_stmt = stmt;
                            flow.source_sig = sig;
                            flow.sink_method = cur.method;
                            flow.sink_stmt = t;
                            flow.sink_sig = key;
                            flow.arg_index = idx;
                            flow.path = path_of(ni, {cur.method, t});
                            flows.push_back(std::move(flow));
                        }
                        // Arguments flow into the parameters of every
                        // CHA-resolved internal target at this site.
                        for (const CallEdge* e : cg_.edges_from(cur.method)) {
                            if (e->site != t) continue;
                            const MethodDef* callee = p_.lookup_method(e->callee);
                            if (callee && i < callee->params.size())
                                add_local(ni, e->callee, -1, callee->params[i].name,
                                          {cur.method, t});
                        }
                    }
                }
            }
        }
        return flows;
    }

    const std::vector<std::vector<int>>& successors(const MethodDef& m) {
        auto it = succ_.find(m.key());
        if (it != succ_.end()) return it->second;
        return succ_[m.key()] = stmt_successors(m, static_cast<int>(m.body.size()));
    }

    const Program& p_;
    const CallGraph& cg_;
    const ApiCatalog& catalog_;
    std::set<std::string> sources_;
    std::map<std::string, std::vector<FieldLoadSite>> field_loads_;
    std::vector<std::tuple<std::string, int, std::string, std::string>> source_sites_;
    std::map<std::string, std::vector<const CallEdge*>> edges_to_;
    std::map<std::string, std::vector<std::vector<int>>> succ_;
};

}  // namespace detail

inline std::vector<TaintFlow> taint_analyze(const Program& p, const CallGraph& cg,
                                            const ApiCatalog& catalog,
                                            ApiCatalog::SourceMode mode) {
    detail::TaintEngine engine(p, cg, catalog, mode);
    return engine.run();
}

// Definition-3 gate: a flow is hidden when its source statement sits inside
// the hidden branch of a suspicious finding.
inline std::vector<HsdfFinding> detect_hsdf(const std::vector<TaintFlow>& flows,
                                            const std::vector<HsoFinding>& findings) {
    std::vector<HsdfFinding> out;
    for (const auto& flow : flows) {
        for (size_t i = 0; i < findings.size(); ++i) {
            const auto& f = findings[i];
            if (!f.suspicious) continue;
            const auto& cand = f.inference.candidate;
            if (cand.site.method != flow.source_method) continue;
            if (cand.region().count(flow.source_stmt))
                out.push_back({flow, static_cast<int>(i)});
        }
    }
    return out;
}

}  // namespace hso

#endif  // HSO_TAINT_HPP
