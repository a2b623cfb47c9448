#ifndef HSO_ORACLE_HPP
#define HSO_ORACLE_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hso/catalog.hpp"
#include "hso/ir.hpp"
#include "hso/origin.hpp"

// Brute-force oracles: definitionally literal re-derivations of branch
// location, trigger origins and taint flows, built on exhaustive path
// enumeration instead of worklists. They deliberately share only the IR
// model, the catalog data and the Origin value type with the optimized
// analyses (checked by a test on this header's includes). Exponential;
// guarded by a statement budget.

namespace hso {

struct SizeError : std::runtime_error {
    explicit SizeError(size_t n, size_t limit)
        : std::runtime_error("program too large for oracle: " + std::to_string(n) +
                             " statements (limit " + std::to_string(limit) + ")") {}
};

inline constexpr size_t kOracleMaxStatements = 50;

struct OracleHsb {
    std::string method;
    int cond_stmt = 0;
    bool then_arm = true;
    std::set<std::string> hsb_apis;
    std::set<std::string> sibling_apis;
    std::set<std::string> distinctive;

    bool operator<(const OracleHsb& o) const {
        return std::tie(method, cond_stmt, then_arm) < std::tie(o.method, o.cond_stmt, o.then_arm);
    }
    bool operator==(const OracleHsb& o) const {
        return method == o.method && cond_stmt == o.cond_stmt && then_arm == o.then_arm &&
               hsb_apis == o.hsb_apis && sibling_apis == o.sibling_apis &&
               distinctive == o.distinctive;
    }
};

namespace oracle_detail {

inline void guard(const Program& p) {
    if (p.statement_count() > kOracleMaxStatements)
        throw SizeError(p.statement_count(), kOracleMaxStatements);
}

// Statement successors, re-derived from the raw IR. `n` is the pseudo exit.
inline std::vector<std::vector<int>> successor_table(const MethodDef& m) {
    int n = static_cast<int>(m.body.size());
    std::vector<std::vector<int>> succ(m.body.size());
    for (int i = 0; i < n; ++i) {
        const auto& st = m.body[i];
        if (auto* c = std::get_if<CondStmt>(&st.form)) {
            succ[i].push_back(m.labels.at(c->then_label));
            int e = m.labels.at(c->else_label);
            if (e != succ[i][0]) succ[i].push_back(e);
        } else if (auto* g = std::get_if<GotoStmt>(&st.form)) {
            succ[i].push_back(m.labels.at(g->label));
        } else if (std::holds_alternative<ReturnStmt>(st.form)) {
            succ[i].push_back(n);
        } else {
            succ[i].push_back(i + 1 < n ? i + 1 : n);
        }
    }
    return succ;
}

// Every statement visited on some edge-simple walk from `from`, never
// stepping onto `stop`, enumerated by explicit depth-first walks.
inline void enumerate_walks(const std::vector<std::vector<int>>& succ, int from, int stop,
                            int exit_id, std::set<std::pair<int, int>>& used_edges,
                            std::set<int>& visited) {
    if (from == stop || from == exit_id) return;
    visited.insert(from);
    for (int next : succ[from]) {
        if (!used_edges.insert({from, next}).second) continue;
        enumerate_walks(succ, next, stop, exit_id, used_edges, visited);
        used_edges.erase({from, next});
    }
}

inline std::set<int> walk_region(const MethodDef& m, int from, int stop) {
    auto succ = successor_table(m);
    int exit_id = static_cast<int>(m.body.size());
    std::set<int> visited;
    std::set<std::pair<int, int>> used;
    enumerate_walks(succ, from, stop, exit_id, used, visited);
    return visited;
}

inline std::set<int> reachable_from_entry(const MethodDef& m) {
    if (m.body.empty()) return {};
    return walk_region(m, 0, -2);  // -2: no stop statement
}

// d post-dominates s iff removing d leaves exit unreachable from s.
inline bool reaches_exit_avoiding(const MethodDef& m, int from, int avoid) {
    auto succ = successor_table(m);
    int exit_id = static_cast<int>(m.body.size());
    std::set<int> seen;
    std::vector<int> work{from};
    if (from == avoid) return false;
    while (!work.empty()) {
        int s = work.back();
        work.pop_back();
        if (s == exit_id) return true;
        if (s == avoid || !seen.insert(s).second) continue;
        for (int t : succ[s]) work.push_back(t);
    }
    return false;
}

inline std::optional<int> immediate_postdominator_stmt(const MethodDef& m, int stmt) {
    int n = static_cast<int>(m.body.size());
    if (!reaches_exit_avoiding(m, stmt, -2)) return std::nullopt;
    std::set<int> pdoms;
    for (int d = 0; d < n; ++d) {
        if (d == stmt) continue;
        if (!reaches_exit_avoiding(m, stmt, d)) pdoms.insert(d);
    }
    // The immediate one is post-dominated by every other post-dominator.
    for (int cand : pdoms) {
        bool immediate = true;
        for (int other : pdoms) {
            if (other == cand) continue;
            if (reaches_exit_avoiding(m, cand, other)) {
                immediate = false;
                break;
            }
        }
        if (immediate) return cand;
    }
    return std::nullopt;  // exit is the join
}

// Literal CHA: subtype enumeration by scanning the class list.
inline std::set<std::string> virtual_targets(const Program& p, const std::string& base,
                                             const std::string& method) {
    std::set<std::string> out;
    const ClassDef* cur = p.lookup_class(base);
    bool found = false;
    while (cur) {
        bool defines = false;
        for (const auto& mm : cur->methods)
            if (mm.name == method) defines = true;
        if (defines) {
            out.insert(cur->name + "#" + method);
            found = true;
            break;
        }
        cur = cur->superclass ? p.lookup_class(*cur->superclass) : nullptr;
    }
    if (!found) out.insert(base + "#" + method);
    for (const auto& cd : p.classes) {
        if (cd.name == base) continue;
        bool descends = false;
        const ClassDef* c = &cd;
        while (c && c->superclass) {
            if (*c->superclass == base) {
                descends = true;
                break;
            }
            c = p.lookup_class(*c->superclass);
        }
        if (!descends) continue;
        for (const auto& mm : cd.methods)
            if (mm.name == method) out.insert(cd.name + "#" + method);
    }
    return out;
}

inline void collect_sensitive(const Program& p, const ApiCatalog& cat, const std::string& method,
                              std::set<std::string>& seen, std::set<std::string>& apis) {
    const MethodDef* m = p.lookup_method(method);
    if (!m) {
        if (cat.is_sensitive(method)) apis.insert(method);
        return;
    }
    for (const auto& st : m->body) {
        const CallExpr* call = st.call();
        if (!call) continue;
        std::set<std::string> targets;
        if (call->kind == CallKind::Virtual) {
            targets = virtual_targets(p, call->callee_class, call->callee_name);
        } else {
            targets.insert(call->callee_key());
        }
        for (const auto& t : targets) {
            if (cat.is_sensitive(t)) apis.insert(t);
            if (seen.insert(t).second) collect_sensitive(p, cat, t, seen, apis);
        }
    }
}

inline std::set<std::string> region_sensitive_apis(const Program& p, const ApiCatalog& cat,
                                                   const MethodDef& m, const std::set<int>& region) {
    std::set<std::string> apis, seen;
    for (int s : region) {
        const CallExpr* call = m.body[s].call();
        if (!call) continue;
        std::set<std::string> targets;
        if (call->kind == CallKind::Virtual) {
            targets = virtual_targets(p, call->callee_class, call->callee_name);
        } else {
            targets.insert(call->callee_key());
        }
        for (const auto& t : targets) {
            if (cat.is_sensitive(t)) apis.insert(t);
            if (seen.insert(t).second) collect_sensitive(p, cat, t, seen, apis);
        }
    }
    return apis;
}

}  // namespace oracle_detail

// Definition-1 re-derivation: regions by walk enumeration, rules applied
// literally per arm.
inline std::vector<OracleHsb> oracle_hsbs(const Program& p, const ApiCatalog& catalog) {
    oracle_detail::guard(p);
    std::vector<OracleHsb> out;
    std::vector<const MethodDef*> methods;
    for (const auto& cd : p.classes)
        for (const auto& m : cd.methods) methods.push_back(&m);
    std::sort(methods.begin(), methods.end(),
              [](const MethodDef* a, const MethodDef* b) { return a->key() < b->key(); });
    for (const MethodDef* m : methods) {
        if (m->body.empty()) continue;
        auto live = oracle_detail::reachable_from_entry(*m);
        for (const auto& st : m->body) {
            auto* c = std::get_if<CondStmt>(&st.form);
            if (!c || !live.count(st.id)) continue;
            auto join = oracle_detail::immediate_postdominator_stmt(*m, st.id);
            int stop = join ? *join : -2;
            auto then_region =
                oracle_detail::walk_region(*m, m->labels.at(c->then_label), stop);
            auto else_region =
                oracle_detail::walk_region(*m, m->labels.at(c->else_label), stop);
            then_region.erase(st.id);
            else_region.erase(st.id);
            if (join) {
                then_region.erase(*join);
                else_region.erase(*join);
            }
            bool overlap = false;
            for (int s : then_region)
                if (else_region.count(s)) overlap = true;
            if (overlap) continue;
            auto cond_vars = c->cond.read_locals();
            auto then_apis = oracle_detail::region_sensitive_apis(p, catalog, *m, then_region);
            auto else_apis = oracle_detail::region_sensitive_apis(p, catalog, *m, else_region);
            for (bool then_arm : {true, false}) {
                const auto& mine = then_arm ? then_apis : else_apis;
                const auto& sibling = then_arm ? else_apis : then_apis;
                const auto& region = then_arm ? then_region : else_region;
                std::set<std::string> distinctive;
                std::set_difference(mine.begin(), mine.end(), sibling.begin(), sibling.end(),
                                    std::inserter(distinctive, distinctive.begin()));
                if (distinctive.empty()) continue;
                std::set<std::string> used;
                for (int s : region) {
                    auto reads = m->body[s].read_locals();
                    used.insert(reads.begin(), reads.end());
                    if (auto d = m->body[s].defined_local()) used.insert(*d);
                }
                bool shares = false;
                for (const auto& v : cond_vars)
                    if (used.count(v)) shares = true;
                if (shares) continue;
                OracleHsb h;
                h.method = m->key();
                h.cond_stmt = st.id;
                h.then_arm = then_arm;
                h.hsb_apis = mine;
                h.sibling_apis = sibling;
                h.distinctive = std::move(distinctive);
                out.push_back(std::move(h));
            }
        }
    }
    return out;
}

namespace oracle_detail {

struct OriginSearch {
    const Program& p;
    const ApiCatalog& cat;
    std::set<Origin> origins;

    using Triple = std::tuple<std::string, int, std::string>;

    void track(const MethodDef& m, int stmt, const std::string& var, std::set<Triple> on_path) {
        if (!on_path.insert({m.key(), stmt, var}).second) return;  // cycle cut per path
        auto succ = successor_table(m);
        std::vector<std::vector<int>> preds(m.body.size());
        for (size_t i = 0; i < succ.size(); ++i)
            for (int s : succ[i])
                if (s != static_cast<int>(m.body.size())) preds[s].push_back(static_cast<int>(i));
        if (stmt == 0) at_entry(m, var, on_path);
        for (int t : preds[stmt]) {
            auto d = m.body[t].defined_local();
            if (d && *d == var) {
                at_definition(m, t, on_path);
            } else {
                track(m, t, var, on_path);
            }
        }
    }

    void at_definition(const MethodDef& m, int stmt, const std::set<Triple>& on_path) {
        const Statement& st = m.body[stmt];
        if (auto* a = std::get_if<AssignStmt>(&st.form)) {
            if (auto* c = std::get_if<ConstExpr>(&a->value)) {
                origins.insert(Origin::constant(c->value));
            } else if (auto* l = std::get_if<LocalExpr>(&a->value)) {
                track(m, stmt, l->name, on_path);
            } else if (auto* b = std::get_if<BinOpExpr>(&a->value)) {
                if (b->lhs.is_local) track(m, stmt, b->lhs.local, on_path);
                if (b->rhs.is_local) track(m, stmt, b->rhs.local, on_path);
            } else if (auto* f = std::get_if<FieldLoadExpr>(&a->value)) {
                at_field_load(m, stmt, *f, on_path);
            }
        } else if (auto* inv = std::get_if<InvokeStmt>(&st.form)) {
            at_call(m, stmt, inv->call, on_path);
        }
    }

    void at_field_load(const MethodDef& m, int stmt, const FieldLoadExpr& f,
                       const std::set<Triple>& on_path) {
        (void)stmt;
        std::string cls = f.recv.name;
        if (f.recv.is_local) {
            auto t = m.local_type(f.recv.name);
            cls = t ? *t : f.recv.name;
        }
        std::string key;
        const ClassDef* cur = p.lookup_class(cls);
        while (cur) {
            for (const auto& fd : cur->fields)
                if (fd.name == f.field) key = cur->name + "#" + f.field;
            if (!key.empty()) break;
            cur = cur->superclass ? p.lookup_class(*cur->superclass) : nullptr;
        }
        if (key.empty()) key = cls + "#" + f.field;
        if (cat.is_system_property(key)) {
            origins.insert(Origin::system_property(key));
            return;
        }
        const ClassDef* owner = p.lookup_class(key.substr(0, key.find('#')));
        bool any = false;
        if (owner) {
            for (const auto& mm : owner->methods) {
                for (const auto& st2 : mm.body) {
                    auto* fs = std::get_if<FieldStoreStmt>(&st2.form);
                    if (!fs) continue;
                    std::string cls2 = fs->recv.name;
                    if (fs->recv.is_local) {
                        auto t2 = mm.local_type(fs->recv.name);
                        cls2 = t2 ? *t2 : fs->recv.name;
                    }
                    std::string key2;
                    const ClassDef* c2 = p.lookup_class(cls2);
                    while (c2) {
                        for (const auto& fd : c2->fields)
                            if (fd.name == fs->field) key2 = c2->name + "#" + fs->field;
                        if (!key2.empty()) break;
                        c2 = c2->superclass ? p.lookup_class(*c2->superclass) : nullptr;
                    }
                    if (key2.empty()) key2 = cls2 + "#" + fs->field;
                    if (key2 == key) {
                        any = true;
                        track(mm, st2.id, fs->source, on_path);
                    }
                }
            }
        }
        if (!any) origins.insert(Origin::unresolved("unmodeled-field"));
    }

    void at_call(const MethodDef& m, int stmt, const CallExpr& call,
                 const std::set<Triple>& on_path) {
        const std::string key = call.callee_key();
        if (cat.is_system_api(key)) {
            origins.insert(Origin::system_api(key));
            return;
        }
        if (const MethodDef* callee = p.lookup_method(key)) {
            for (const auto& st2 : callee->body) {
                auto* r = std::get_if<ReturnStmt>(&st2.form);
                if (r && r->value) track(*callee, st2.id, *r->value, on_path);
            }
            if (call.receiver) track(m, stmt, *call.receiver, on_path);
            return;
        }
        origins.insert(Origin::unresolved("external-no-body"));
        if (call.receiver) track(m, stmt, *call.receiver, on_path);
        for (const auto& a : call.args)
            if (a.is_local) track(m, stmt, a.local, on_path);
    }

    void at_entry(const MethodDef& m, const std::string& var, const std::set<Triple>& on_path) {
        auto idx = m.param_index(var);
        if (!idx) return;
        if (m.is_entry_point()) {
            origins.insert(Origin::entry_point(m.key(), *idx));
            return;
        }
        for (const auto& cd : p.classes) {
            for (const auto& caller : cd.methods) {
                for (const auto& st : caller.body) {
                    const CallExpr* call = st.call();
                    if (!call) continue;
                    std::set<std::string> targets;
                    if (call->kind == CallKind::Virtual) {
                        targets = virtual_targets(p, call->callee_class, call->callee_name);
                    } else {
                        targets.insert(call->callee_key());
                    }
                    if (!targets.count(m.key())) continue;
                    if (static_cast<size_t>(*idx) >= call->args.size()) continue;
                    const Operand& arg = call->args[*idx];
                    if (arg.is_local) {
                        track(caller, st.id, arg.local, on_path);
                    } else {
                        origins.insert(Origin::constant(arg.lit));
                    }
                }
            }
        }
    }
};

}  // namespace oracle_detail

// Definition-2 re-derivation: exhaustive backward def-use path enumeration
// from the condition variables of the given conditional.
inline std::set<Origin> oracle_origins(const Program& p, const ApiCatalog& catalog,
                                       const std::string& method, int cond_stmt) {
    oracle_detail::guard(p);
    const MethodDef* m = p.lookup_method(method);
    if (!m || cond_stmt < 0 || cond_stmt >= static_cast<int>(m->body.size())) return {};
    auto* c = std::get_if<CondStmt>(&m->body[cond_stmt].form);
    if (!c) return {};
    oracle_detail::OriginSearch search{p, catalog, {}};
    for (const auto& v : c->cond.read_locals()) search.track(*m, cond_stmt, v, {});
    return search.origins;
}

struct OracleFlow {
    std::string source_method;
    int source_stmt = 0;
    std::string sink_method;
    int sink_stmt = 0;
    int arg_index = 0;

    bool operator<(const OracleFlow& o) const {
        return std::tie(source_method, source_stmt, sink_method, sink_stmt, arg_index) <
               std::tie(o.source_method, o.source_stmt, o.sink_method, o.sink_stmt, o.arg_index);
    }
    bool operator==(const OracleFlow& o) const { return !(*this < o) && !(o < *this); }
};

namespace oracle_detail {

struct TaintSearch {
    const Program& p;
    const ApiCatalog& cat;
    std::set<std::string> sources;
    std::string source_method;
    int source_stmt = 0;
    std::set<OracleFlow> flows;

    using State = std::tuple<std::string, int, std::string>;

    std::string field_key_of(const MethodDef& m, const Receiver& recv, const std::string& field) {
        std::string cls = recv.name;
        if (recv.is_local) {
            auto t = m.local_type(recv.name);
            cls = t ? *t : recv.name;
        }
        const ClassDef* cur = p.lookup_class(cls);
        while (cur) {
            for (const auto& fd : cur->fields)
                if (fd.name == field) return cur->name + "#" + field;
            cur = cur->superclass ? p.lookup_class(*cur->superclass) : nullptr;
        }
        return cls + "#" + field;
    }

    // Enumerate forward def-use walks from the value defined at `def_site`.
    void spread(const MethodDef& m, int def_site, const std::string& var,
                std::set<State> on_path) {
        if (!on_path.insert({m.key(), def_site, var}).second) return;
        auto succ = successor_table(m);
        int exit_id = static_cast<int>(m.body.size());
        std::set<int> seen;
        std::vector<int> frontier;
        if (def_site < 0) {
            if (!m.body.empty()) frontier.push_back(0);
        } else {
            for (int s : succ[def_site])
                if (s != exit_id) frontier.push_back(s);
        }
        while (!frontier.empty()) {
            int t = frontier.back();
            frontier.pop_back();
            if (!seen.insert(t).second) continue;
            const Statement& st = m.body[t];
            if (st.read_locals().count(var)) at_use(m, t, var, on_path);
            auto d = st.defined_local();
            if (d && *d == var) continue;
            for (int s : succ[t])
                if (s != exit_id) frontier.push_back(s);
        }
    }

    void at_use(const MethodDef& m, int t, const std::string& var, const std::set<State>& on_path) {
        const Statement& st = m.body[t];
        if (auto* a = std::get_if<AssignStmt>(&st.form)) {
            bool feeds = false;
            if (auto* l = std::get_if<LocalExpr>(&a->value)) feeds = l->name == var;
            if (auto* b = std::get_if<BinOpExpr>(&a->value))
                feeds = (b->lhs.is_local && b->lhs.local == var) ||
                        (b->rhs.is_local && b->rhs.local == var);
            if (feeds) spread(m, t, a->target, on_path);
        } else if (auto* fs = std::get_if<FieldStoreStmt>(&st.form)) {
            if (fs->source != var) return;
            std::string key = field_key_of(m, fs->recv, fs->field);
            for (const auto& cd : p.classes) {
                for (const auto& mm : cd.methods) {
                    for (const auto& st2 : mm.body) {
                        auto* a2 = std::get_if<AssignStmt>(&st2.form);
                        if (!a2) continue;
                        auto* fl = std::get_if<FieldLoadExpr>(&a2->value);
                        if (!fl) continue;
                        if (field_key_of(mm, fl->recv, fl->field) == key)
                            spread(mm, st2.id, a2->target, on_path);
                    }
                }
            }
        } else if (auto* r = std::get_if<ReturnStmt>(&st.form)) {
            if (!r->value || *r->value != var) return;
            for (const auto& cd : p.classes) {
                for (const auto& caller : cd.methods) {
                    for (const auto& st2 : caller.body) {
                        auto* inv = std::get_if<InvokeStmt>(&st2.form);
                        if (!inv || !inv->target) continue;
                        if (!call_targets(inv->call).count(m.key())) continue;
                        spread(caller, st2.id, *inv->target, on_path);
                    }
                }
            }
        } else if (auto* inv = std::get_if<InvokeStmt>(&st.form)) {
            const CallExpr& call = inv->call;
            for (size_t i = 0; i < call.args.size(); ++i) {
                if (!call.args[i].is_local || call.args[i].local != var) continue;
                if (cat.is_sink(call.callee_key())) {
                    flows.insert({source_method, source_stmt, m.key(), t, static_cast<int>(i)});
                }
                for (const auto& target : call_targets(call)) {
                    const MethodDef* callee = p.lookup_method(target);
                    if (callee && i < callee->params.size())
                        spread(*callee, -1, callee->params[i].name, on_path);
                }
            }
        }
    }

    std::set<std::string> call_targets(const CallExpr& call) {
        if (call.kind == CallKind::Virtual)
            return virtual_targets(p, call.callee_class, call.callee_name);
        return {call.callee_key()};
    }
};

}  // namespace oracle_detail

// Definition-3 precursor: exhaustive source-to-sink path search.
inline std::set<OracleFlow> oracle_taint(const Program& p, const ApiCatalog& catalog,
                                         ApiCatalog::SourceMode mode) {
    oracle_detail::guard(p);
    std::set<OracleFlow> flows;
    auto sources = catalog.sources(mode);
    for (const auto& cd : p.classes) {
        for (const auto& m : cd.methods) {
            for (const auto& st : m.body) {
                auto* inv = std::get_if<InvokeStmt>(&st.form);
                if (!inv || !inv->target) continue;
                if (!sources.count(inv->call.callee_key())) continue;
                oracle_detail::TaintSearch search{p, catalog, sources, m.key(), st.id, {}};
                search.spread(m, st.id, *inv->target, {});
                flows.insert(search.flows.begin(), search.flows.end());
            }
        }
    }
    return flows;
}

}  // namespace hso

#endif  // HSO_ORACLE_HPP
