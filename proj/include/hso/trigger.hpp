#ifndef HSO_TRIGGER_HPP
#define HSO_TRIGGER_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hso/hsb.hpp"
#include "hso/origin.hpp"

// Trigger condition inference: inter-procedural backward data-flow from the
// condition variables of a hidden sensitive branch to their origins. The
// walk crosses into callees through return values, back into callers through
// parameters, and through fields via stores in the declaring class. Chains
// terminate at system APIs, system properties, constants and entry-point
// parameters; everything else becomes an explicit Unresolved origin.

namespace hso {

struct TriggerInference {
    HsbCandidate candidate;
    std::set<Origin> origins;
    std::vector<std::pair<std::string, int>> ctb;  // (method key, stmt id), discovery order
    std::set<TriggerCategory> categories;
    bool is_hso = false;
    long visited_triples = 0;
    bool budget_exhausted = false;
    long max_process_count = 0;  // filled when TriggerOptions::instrument is set
};

struct TriggerOptions {
    long budget = 10000;     // max visited (method, stmt, var) triples
    bool instrument = false;  // verify the no-reprocessing invariant
};

namespace detail {

// Resolve a field access to its declaring class: walk the receiver's static
// type up the internal hierarchy to the first class declaring the field.
inline std::string field_key(const Program& p, const MethodDef& m, const Receiver& recv,
                             const std::string& field) {
    std::string cls = recv.name;
    if (recv.is_local) {
        auto t = m.local_type(recv.name);
        cls = t ? *t : recv.name;
    }
    const ClassDef* cur = p.lookup_class(cls);
    while (cur) {
        for (const auto& f : cur->fields)
            if (f.name == field) return field_ref(cur->name, field);
        cur = cur->superclass ? p.lookup_class(*cur->superclass) : nullptr;
    }
    return field_ref(cls, field);
}

struct FieldStoreSite {
    const MethodDef* method;
    int stmt;
    std::string source_local;
};

// Stores to `key` inside the declaring class only; cross-class heap flow is
// deliberately not followed.
inline std::vector<FieldStoreSite> stores_to(const Program& p, const std::string& key) {
    std::vector<FieldStoreSite> out;
    auto hash = key.find('#');
    std::string cls = key.substr(0, hash);
    const ClassDef* cd = p.lookup_class(cls);
    if (!cd) return out;
    for (const auto& m : cd->methods) {
        for (const auto& st : m.body) {
            auto* fs = std::get_if<FieldStoreStmt>(&st.form);
            if (!fs) continue;
            if (field_key(p, m, fs->recv, fs->field) == key)
                out.push_back({&m, st.id, fs->source});
        }
    }
    return out;
}

class BackwardTracker {
public:
    BackwardTracker(const Program& p, const CallGraph& cg, const ApiCatalog& catalog,
                    const TriggerOptions& opts)
        : p_(p), cg_(cg), catalog_(catalog), opts_(opts) {}

    TriggerInference run(const HsbCandidate& cand) {
        TriggerInference inf;
        inf.candidate = cand;
        const MethodDef* m = p_.lookup_method(cand.site.method);
        for (const auto& v : cand.site.cond_vars) push(*m, cand.site.cond_stmt, v);
        while (!work_.empty()) {
            auto [mk, stmt, var] = work_.front();
            work_.pop_front();
            if (visited_.count({mk, stmt, var})) continue;
            if (inf.visited_triples >= opts_.budget) {
                inf.origins.insert(Origin::unresolved("depth-limit"));
                inf.budget_exhausted = true;
                break;
            }
            visited_.insert({mk, stmt, var});
            ++inf.visited_triples;
            if (opts_.instrument) ++process_count_[{mk, stmt, var}];
            step(inf, *p_.lookup_method(mk), stmt, var);
        }
        for (const auto& o : inf.origins) {
            if (o.is_system()) inf.categories.insert(catalog_.classify_trigger_origin(o.what));
        }
        inf.is_hso = std::any_of(inf.origins.begin(), inf.origins.end(),
                                 [](const Origin& o) { return o.is_system(); });
        if (opts_.instrument) {
            for (const auto& [k, v] : process_count_) {
                (void)k;
                if (v > inf.max_process_count) inf.max_process_count = v;
            }
        }
        return inf;
    }

private:
    using Triple = std::tuple<std::string, int, std::string>;

    void push(const MethodDef& m, int stmt, const std::string& var) {
        if (!visited_.count({m.key(), stmt, var})) work_.push_back({m.key(), stmt, var});
    }

    // Scan backwards from `stmt` (exclusive) for definitions of `var`.
    void step(TriggerInference& inf, const MethodDef& m, int stmt, const std::string& var) {
        if (!preds_.count(m.key())) compute_preds(m);
        const auto& preds = preds_.at(m.key());
        bool at_entry = stmt == 0;
        if (stmt >= 0) {
            for (int t : preds[stmt]) {
                if (defines(m.body[t], var)) {
                    handle_def(inf, m, t, var);
                } else {
                    push(m, t, var);
                }
            }
        }
        if (at_entry) handle_param(inf, m, var);
    }

    static bool defines(const Statement& st, const std::string& var) {
        auto d = st.defined_local();
        return d && *d == var;
    }

    void note_ctb(TriggerInference& inf, const MethodDef& m, int stmt) {
        if (ctb_seen_.insert({m.key(), stmt}).second) inf.ctb.push_back({m.key(), stmt});
    }

    void handle_def(TriggerInference& inf, const MethodDef& m, int stmt, const std::string& var) {
        note_ctb(inf, m, stmt);
        const Statement& st = m.body[stmt];
        if (auto* a = std::get_if<AssignStmt>(&st.form)) {
            handle_expr(inf, m, stmt, a->value);
        } else if (auto* inv = std::get_if<InvokeStmt>(&st.form)) {
            handle_call(inf, m, stmt, inv->call);
        }
        (void)var;
    }

    void handle_expr(TriggerInference& inf, const MethodDef& m, int stmt, const Expr& e) {
        if (auto* c = std::get_if<ConstExpr>(&e)) {
            inf.origins.insert(Origin::constant(c->value));
        } else if (auto* l = std::get_if<LocalExpr>(&e)) {
            push(m, stmt, l->name);
        } else if (auto* b = std::get_if<BinOpExpr>(&e)) {
            if (b->lhs.is_local) push(m, stmt, b->lhs.local);
            if (b->rhs.is_local) push(m, stmt, b->rhs.local);
        } else if (auto* f = std::get_if<FieldLoadExpr>(&e)) {
            std::string key = field_key(p_, m, f->recv, f->field);
            if (catalog_.is_system_property(key)) {
                inf.origins.insert(Origin::system_property(key));
                return;
            }
            auto stores = stores_to(p_, key);
            if (stores.empty()) {
                inf.origins.insert(Origin::unresolved("unmodeled-field"));
                return;
            }
            std::sort(stores.begin(), stores.end(), [](const auto& a, const auto& b) {
                return std::tie(a.method->owner_class, a.method->name, a.stmt) <
                       std::tie(b.method->owner_class, b.method->name, b.stmt);
            });
            for (const auto& s : stores) {
                note_ctb(inf, *s.method, s.stmt);
                push(*s.method, s.stmt, s.source_local);
            }
        }
    }

    void handle_call(TriggerInference& inf, const MethodDef& m, int stmt, const CallExpr& call) {
        const std::string key = call.callee_key();
        if (catalog_.is_system_api(key)) {
            inf.origins.insert(Origin::system_api(key));
            return;
        }
        if (const MethodDef* callee = p_.lookup_method(key)) {
            for (const auto& st : callee->body) {
                auto* r = std::get_if<ReturnStmt>(&st.form);
                if (r && r->value) {
                    note_ctb(inf, *callee, st.id);
                    push(*callee, st.id, *r->value);
                }
            }
            if (call.receiver) push(m, stmt, *call.receiver);
            return;
        }
        inf.origins.insert(Origin::unresolved("external-no-body"));
        if (call.receiver) push(m, stmt, *call.receiver);
        for (const auto& a : call.args)
            if (a.is_local) push(m, stmt, a.local);
    }

    void handle_param(TriggerInference& inf, const MethodDef& m, const std::string& var) {
        auto idx = m.param_index(var);
        if (!idx) return;  // undefined local: chain ends silently
        if (m.is_entry_point()) {
            inf.origins.insert(Origin::entry_point(m.key(), *idx));
            return;
        }
        for (const CallEdge* e : all_edges_to(m.key())) {
            if (e->caller == cg_.dummy_main) continue;
            const MethodDef* caller = p_.lookup_method(e->caller);
            if (!caller) continue;
            const CallExpr* call = caller->body[e->site].call();
            if (!call || static_cast<size_t>(*idx) >= call->args.size()) continue;
            const Operand& arg = call->args[*idx];
            if (arg.is_local) {
                note_ctb(inf, *caller, e->site);
                push(*caller, e->site, arg.local);
            } else {
                inf.origins.insert(Origin::constant(arg.lit));
            }
        }
    }

    std::vector<const CallEdge*> all_edges_to(const std::string& callee) {
        auto it = edges_to_.find(callee);
        if (it != edges_to_.end()) return it->second;
        std::vector<const CallEdge*> out;
        for (const auto& e : cg_.edges)
            if (e.callee == callee) out.push_back(&e);
        edges_to_[callee] = out;
        return out;
    }

    void compute_preds(const MethodDef& m) {
        int exit_id = static_cast<int>(m.body.size());
        auto succ = stmt_successors(m, exit_id);
        std::vector<std::vector<int>> preds(m.body.size());
        for (size_t i = 0; i < succ.size(); ++i) {
            for (int s : succ[i])
                if (s != exit_id) preds[s].push_back(static_cast<int>(i));
        }
        preds_[m.key()] = std::move(preds);
    }

    const Program& p_;
    const CallGraph& cg_;
    const ApiCatalog& catalog_;
    const TriggerOptions& opts_;
    std::deque<Triple> work_;
    std::set<Triple> visited_;
    std::set<std::pair<std::string, int>> ctb_seen_;
    std::map<std::string, std::vector<std::vector<int>>> preds_;
    std::map<std::string, std::vector<const CallEdge*>> edges_to_;
    std::map<Triple, long> process_count_;
};

}  // namespace detail

inline TriggerInference infer_trigger(const Program& p, const CallGraph& cg,
                                      const ApiCatalog& catalog, const HsbCandidate& candidate,
                                      const TriggerOptions& opts = {}) {
    detail::BackwardTracker tracker(p, cg, catalog, opts);
    return tracker.run(candidate);
}

inline std::vector<TriggerInference> infer_all(const Program& p, const CallGraph& cg,
                                               const ApiCatalog& catalog,
                                               const std::vector<HsbCandidate>& candidates,
                                               const TriggerOptions& opts = {}) {
    std::vector<TriggerInference> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(infer_trigger(p, cg, catalog, c, opts));
    return out;
}

// Definition-2 gate: keep only inferences whose condition actually derives
// from a system API or system property.
inline std::vector<TriggerInference> detect_hsos(const Program& p, const CallGraph& cg,
                                                 const ApiCatalog& catalog,
                                                 const std::vector<HsbCandidate>& candidates,
                                                 const TriggerOptions& opts = {}) {
    std::vector<TriggerInference> out;
    for (auto& inf : infer_all(p, cg, catalog, candidates, opts)) {
        if (inf.is_hso) out.push_back(std::move(inf));
    }
    return out;
}

}  // namespace hso

#endif  // HSO_TRIGGER_HPP
