#ifndef HSO_PIPELINE_HPP
#define HSO_PIPELINE_HPP

#include <string>
#include <vector>

#include "hso/report.hpp"

// One-call pipeline over a parsed program:
// graphs -> branch location -> trigger inference -> screening -> taint/HSDF.

namespace hso {

struct AnalysisOptions {
    bool taint = false;
    ApiCatalog::SourceMode source_mode = ApiCatalog::SourceMode::Default;
    long budget = 10000;
    bool rule2_closure = false;
    bool use_whitelist = true;
    std::vector<ConventionalRule> whitelist;  // ignored when !use_whitelist
};

struct AnalysisResult {
    CallGraph callgraph;
    HsbResult hsb;
    std::vector<TriggerInference> inferences;  // one per candidate
    std::vector<HsoFinding> findings;          // screened HSOs (is_hso only)
    std::vector<TaintFlow> flows;
    std::vector<HsdfFinding> hsdfs;
    AnalysisReport report;
};

inline AnalysisResult analyze_program(const Program& p, const ApiCatalog& catalog,
                                      const AnalysisOptions& opts = {}) {
    AnalysisResult res;
    res.callgraph = build_callgraph(p);
    HsbOptions hsb_opts;
    hsb_opts.rule2_closure = opts.rule2_closure;
    res.hsb = locate_hsbs(p, res.callgraph, catalog, hsb_opts);

    TriggerOptions trig_opts;
    trig_opts.budget = opts.budget;
    res.inferences = infer_all(p, res.callgraph, catalog, res.hsb.candidates, trig_opts);

    std::vector<TriggerInference> hsos;
    for (const auto& inf : res.inferences)
        if (inf.is_hso) hsos.push_back(inf);

    std::vector<ConventionalRule> rules;
    if (opts.use_whitelist) rules = opts.whitelist;
    res.findings = screen_all(p, hsos, rules);

    if (opts.taint) {
        res.flows = taint_analyze(p, res.callgraph, catalog, opts.source_mode);
        res.hsdfs = detect_hsdf(res.flows, res.findings);
    }

    AnalysisReport& rep = res.report;
    rep.app_id = p.app_id;
    rep.stats.methods = static_cast<int>(p.method_count());
    rep.stats.branch_sites = res.hsb.branch_sites;
    rep.stats.hsb_candidates = static_cast<int>(res.hsb.candidates.size());
    rep.stats.hsos = static_cast<int>(res.findings.size());
    for (const auto& f : res.findings) {
        if (f.suspicious) {
            ++rep.stats.suspicious;
        } else {
            ++rep.stats.conventional_by_category[f.category];
        }
    }
    rep.stats.taint_flows = static_cast<int>(res.flows.size());
    rep.stats.hsdfs = static_cast<int>(res.hsdfs.size());
    rep.hsos = res.findings;
    rep.hsdfs = res.hsdfs;
    for (const auto& w : p.lint_warnings) rep.diagnostics.push_back("lint: " + w);
    if (res.hsb.skipped_overlapping > 0)
        rep.diagnostics.push_back("skipped " + std::to_string(res.hsb.skipped_overlapping) +
                                  " branch site(s) with overlapping regions");
    int exhausted = 0;
    for (const auto& inf : res.inferences)
        if (inf.budget_exhausted) ++exhausted;
    if (exhausted > 0)
        rep.diagnostics.push_back("trigger inference budget exhausted for " +
                                  std::to_string(exhausted) + " candidate(s)");
    return res;
}

}  // namespace hso

#endif  // HSO_PIPELINE_HPP
