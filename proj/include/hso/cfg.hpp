#ifndef HSO_CFG_HPP
#define HSO_CFG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hso/ir.hpp"
#include "hso/parse.hpp"

// Per-method control-flow graphs: basic blocks, dominator and post-dominator
// trees, and the (condition, then-region, else-region) triple for every
// conditional. A synthetic exit block joins all returns; it carries no
// statements and has id == blocks.size().

namespace hso {

struct BasicBlock {
    int id = 0;
    std::vector<int> stmts;  // dense statement-id run
};

struct Cfg {
    std::string method;  // class#name
    const MethodDef* def = nullptr;
    std::vector<BasicBlock> blocks;
    std::set<std::pair<int, int>> edges;
    int entry = 0;
    int exit = 0;  // synthetic, == blocks.size()
    std::map<int, int> idom;   // block -> immediate dominator (reachable, non-entry)
    std::map<int, int> ipdom;  // block -> immediate post-dominator (blocks reaching exit)
    std::vector<int> stmt_block;  // statement id -> block id
    std::set<int> dead_blocks;    // unreachable from entry

    bool is_exit(int b) const { return b == exit; }

    std::vector<int> successors(int b) const {
        std::vector<int> out;
        for (const auto& [f, t] : edges)
            if (f == b) out.push_back(t);
        return out;
    }
    std::vector<int> predecessors(int b) const {
        std::vector<int> out;
        for (const auto& [f, t] : edges)
            if (t == b) out.push_back(f);
        return out;
    }
};

// One conditional with its two disjoint arm regions.
struct BranchSite {
    std::string method;
    int cond_stmt = 0;
    std::set<std::string> cond_vars;  // locals read by the condition expression
    std::set<int> then_region;
    std::set<int> else_region;
    int join = -1;  // first statement of the immediate post-dominator block; -1 = method exit
};

namespace detail {

inline std::vector<std::vector<int>> stmt_successors(const MethodDef& m, int exit_id) {
    size_t n = m.body.size();
    std::vector<std::vector<int>> succ(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& st = m.body[i];
        if (auto* c = std::get_if<CondStmt>(&st.form)) {
            succ[i].push_back(m.labels.at(c->then_label));
            int e = m.labels.at(c->else_label);
            if (e != succ[i][0]) succ[i].push_back(e);
        } else if (auto* g = std::get_if<GotoStmt>(&st.form)) {
            succ[i].push_back(m.labels.at(g->label));
        } else if (std::holds_alternative<ReturnStmt>(st.form)) {
            succ[i].push_back(exit_id);
        } else if (i + 1 < n) {
            succ[i].push_back(static_cast<int>(i) + 1);
        } else {
            succ[i].push_back(exit_id);  // fall off the end: implicit return
        }
    }
    return succ;
}

// Iterative dominator-set computation; graphs here are tiny.
inline std::map<int, int> immediate_dominators(const std::vector<int>& nodes, int root,
                                               const std::map<int, std::vector<int>>& preds) {
    std::map<int, std::set<int>> dom;
    std::set<int> all(nodes.begin(), nodes.end());
    for (int n : nodes) dom[n] = all;
    dom[root] = {root};
    bool changed = true;
    while (changed) {
        changed = false;
        for (int n : nodes) {
            if (n == root) continue;
            std::set<int> d = all;
            auto it = preds.find(n);
            bool any = false;
            if (it != preds.end()) {
                for (int p : it->second) {
                    if (!dom.count(p)) continue;
                    any = true;
                    std::set<int> meet;
                    std::set_intersection(d.begin(), d.end(), dom[p].begin(), dom[p].end(),
                                          std::inserter(meet, meet.begin()));
                    d = std::move(meet);
                }
            }
            if (!any) d.clear();
            d.insert(n);
            if (d != dom[n]) {
                dom[n] = std::move(d);
                changed = true;
            }
        }
    }
    std::map<int, int> idom;
    for (int n : nodes) {
        if (n == root) continue;
        std::set<int> strict = dom[n];
        strict.erase(n);
        // idom = the strict dominator dominated by every other strict dominator
        std::optional<int> best;
        for (int c : strict) {
            bool ok = true;
            for (int d : strict)
                if (!dom[c].count(d)) {
                    ok = false;
                    break;
                }
            if (ok) {
                best = c;
                break;
            }
        }
        if (best) idom[n] = *best;
    }
    return idom;
}

}  // namespace detail

inline Cfg build_cfg(const MethodDef& m) {
    Cfg cfg;
    cfg.method = m.key();
    cfg.def = &m;
    size_t n = m.body.size();
    int exit_id_stmt = static_cast<int>(n);  // statement-level pseudo exit
    auto succ = detail::stmt_successors(m, exit_id_stmt);

    // Leaders: entry, branch targets, statements after terminators.
    std::set<int> leaders;
    if (n > 0) leaders.insert(0);
    for (size_t i = 0; i < n; ++i) {
        if (!m.body[i].is_terminator()) continue;
        for (int s : succ[i])
            if (s != exit_id_stmt) leaders.insert(s);
        if (i + 1 < n) leaders.insert(static_cast<int>(i) + 1);
    }
    cfg.stmt_block.assign(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (leaders.count(static_cast<int>(i)) || cfg.blocks.empty()) {
            BasicBlock b;
            b.id = static_cast<int>(cfg.blocks.size());
            cfg.blocks.push_back(b);
        }
        cfg.blocks.back().stmts.push_back(static_cast<int>(i));
        cfg.stmt_block[i] = cfg.blocks.back().id;
    }
    cfg.exit = static_cast<int>(cfg.blocks.size());
    cfg.entry = n > 0 ? cfg.stmt_block[0] : cfg.exit;

    for (size_t i = 0; i < n; ++i) {
        int from = cfg.stmt_block[i];
        bool last_in_block = (i == static_cast<size_t>(cfg.blocks[from].stmts.back()));
        if (!last_in_block) continue;
        for (int s : succ[i]) {
            int to = s == exit_id_stmt ? cfg.exit : cfg.stmt_block[s];
            cfg.edges.insert({from, to});
        }
    }

    // Reachability from entry; dead blocks are excluded from dominator info
    // and from branch regions.
    std::set<int> reach;
    std::vector<int> work{cfg.entry};
    while (!work.empty()) {
        int b = work.back();
        work.pop_back();
        if (!reach.insert(b).second) continue;
        for (int s : cfg.successors(b)) work.push_back(s);
    }
    for (const auto& b : cfg.blocks)
        if (!reach.count(b.id)) cfg.dead_blocks.insert(b.id);

    std::vector<int> nodes(reach.begin(), reach.end());
    std::map<int, std::vector<int>> preds, succs;
    for (const auto& [f, t] : cfg.edges) {
        if (!reach.count(f) || !reach.count(t)) continue;
        preds[t].push_back(f);
        succs[f].push_back(t);
    }
    cfg.idom = detail::immediate_dominators(nodes, cfg.entry, preds);

    // Post-dominators: same computation on the reverse graph rooted at exit,
    // restricted to blocks that reach exit.
    std::set<int> reaches_exit;
    std::vector<int> rwork{cfg.exit};
    while (!rwork.empty()) {
        int b = rwork.back();
        rwork.pop_back();
        if (!reaches_exit.insert(b).second) continue;
        auto it = preds.find(b);
        if (it != preds.end())
            for (int p : it->second) rwork.push_back(p);
    }
    std::vector<int> rnodes;
    for (int b : nodes)
        if (reaches_exit.count(b)) rnodes.push_back(b);
    if (reach.count(cfg.exit) == 0) rnodes.push_back(cfg.exit);
    std::map<int, std::vector<int>> rpreds;  // successors in the forward graph
    for (const auto& [f, t] : cfg.edges) {
        if (!reaches_exit.count(f) || !reaches_exit.count(t)) continue;
        if (!reach.count(f)) continue;
        rpreds[f].push_back(t);
    }
    cfg.ipdom = detail::immediate_dominators(rnodes, cfg.exit, rpreds);
    return cfg;
}

struct BranchExtraction {
    std::vector<BranchSite> sites;
    int skipped_overlapping = 0;
};

// Statements of blocks reachable from `from` without entering `stop`.
namespace detail {
inline std::set<int> region_statements(const Cfg& cfg, int from, int stop) {
    std::set<int> out;
    if (from == stop) return out;
    std::set<int> seen;
    std::vector<int> work{from};
    while (!work.empty()) {
        int b = work.back();
        work.pop_back();
        if (b == stop || b == cfg.exit) continue;
        if (!seen.insert(b).second) continue;
        for (int s : cfg.blocks[b].stmts) out.insert(s);
        for (int s : cfg.successors(b)) work.push_back(s);
    }
    return out;
}
}  // namespace detail

inline BranchExtraction extract_branch_sites(const Cfg& cfg) {
    BranchExtraction ex;
    const MethodDef& m = *cfg.def;
    for (const auto& st : m.body) {
        auto* c = std::get_if<CondStmt>(&st.form);
        if (!c) continue;
        int cb = cfg.stmt_block[st.id];
        if (cfg.dead_blocks.count(cb)) continue;
        BranchSite site;
        site.method = cfg.method;
        site.cond_stmt = st.id;
        site.cond_vars = c->cond.read_locals();
        auto jt = cfg.ipdom.find(cb);
        int join_block = jt == cfg.ipdom.end() ? cfg.exit : jt->second;
        site.join = join_block == cfg.exit ? -1 : cfg.blocks[join_block].stmts.front();
        int then_block = cfg.stmt_block[m.labels.at(c->then_label)];
        int else_block = cfg.stmt_block[m.labels.at(c->else_label)];
        site.then_region = detail::region_statements(cfg, then_block, join_block);
        site.else_region = detail::region_statements(cfg, else_block, join_block);
        site.then_region.erase(st.id);
        site.else_region.erase(st.id);
        if (site.join >= 0) {
            site.then_region.erase(site.join);
            site.else_region.erase(site.join);
        }
        std::set<int> overlap;
        std::set_intersection(site.then_region.begin(), site.then_region.end(),
                              site.else_region.begin(), site.else_region.end(),
                              std::inserter(overlap, overlap.begin()));
        if (!overlap.empty()) {
            ++ex.skipped_overlapping;
            continue;
        }
        ex.sites.push_back(std::move(site));
    }
    return ex;
}

inline std::string dump_cfg_dot(const Cfg& cfg) {
    std::ostringstream os;
    os << "digraph \"" << cfg.method << "\" {\n";
    for (const auto& b : cfg.blocks) {
        os << "  b" << b.id << " [shape=box,label=\"b" << b.id << ": " << b.stmts.front() << ".."
           << b.stmts.back();
        if (cfg.dead_blocks.count(b.id)) os << " (dead)";
        os << "\"];\n";
    }
    os << "  b" << cfg.exit << " [shape=doublecircle,label=\"exit\"];\n";
    for (const auto& [f, t] : cfg.edges) os << "  b" << f << " -> b" << t << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace hso

#endif  // HSO_CFG_HPP
