#ifndef HSO_REPORT_HPP
#define HSO_REPORT_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hso/taint.hpp"
#include "hso/version.hpp"

// Stable, machine-readable reports. JSON keys are emitted in sorted order and
// all values are integral or strings, so identical inputs produce identical
// bytes. The text format is a line-oriented digest of the same content.

namespace hso {

struct ReportStats {
    int methods = 0;
    int branch_sites = 0;
    int hsb_candidates = 0;
    int hsos = 0;
    std::map<std::string, int> conventional_by_category;
    int suspicious = 0;
    int taint_flows = 0;
    int hsdfs = 0;
};

struct AnalysisReport {
    std::string app_id;
    ReportStats stats;
    std::vector<HsoFinding> hsos;
    std::vector<HsdfFinding> hsdfs;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline std::string render_ctb_entry(const Program& p, const std::string& method, int stmt) {
    std::string text = "?";
    if (const MethodDef* m = p.lookup_method(method)) {
        if (stmt >= 0 && stmt < static_cast<int>(m->body.size()))
            text = print_statement(m->body[stmt]);
    }
    return method + ":" + std::to_string(stmt) + ": " + text;
}

inline nlohmann::json hso_to_json(const Program& p, const HsoFinding& f) {
    const auto& inf = f.inference;
    const auto& cand = inf.candidate;
    nlohmann::json origins = nlohmann::json::array();
    for (const auto& o : inf.origins) origins.push_back(o.render());
    nlohmann::json categories = nlohmann::json::array();
    for (const auto& c : inf.categories) categories.push_back(to_string(c));
    nlohmann::json ctb = nlohmann::json::array();
    for (const auto& [mk, s] : inf.ctb) ctb.push_back(render_ctb_entry(p, mk, s));
    nlohmann::json hidden = nlohmann::json::array();
    for (const auto& a : cand.hsb_apis) hidden.push_back(a);
    nlohmann::json distinctive = nlohmann::json::array();
    for (const auto& a : cand.distinctive) distinctive.push_back(a);
    nlohmann::json j{
        {"method", cand.site.method},
        {"condStmt", cand.site.cond_stmt},
        {"arm", cand.arm_name()},
        {"hiddenSensitiveApis", hidden},
        {"distinctiveApis", distinctive},
        {"trigger",
         {{"origins", origins}, {"categories", categories}, {"ctb", ctb}}},
        {"verdict", f.suspicious ? "suspicious" : "conventional"},
    };
    if (!f.suspicious) j["category"] = f.category;
    return j;
}

inline nlohmann::json hsdf_to_json(const HsdfFinding& h) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& [mk, s] : h.flow.path) path.push_back(mk + ":" + std::to_string(s));
    return nlohmann::json{
        {"source",
         {{"method", h.flow.source_method},
          {"stmt", h.flow.source_stmt},
          {"signature", h.flow.source_sig}}},
        {"sink",
         {{"method", h.flow.sink_method},
          {"stmt", h.flow.sink_stmt},
          {"signature", h.flow.sink_sig},
          {"argIndex", h.flow.arg_index}}},
        {"path", path},
        {"hsoIndex", h.hso_index},
    };
}

}  // namespace detail

inline nlohmann::json report_to_json(const Program& p, const AnalysisReport& r) {
    nlohmann::json conv = nlohmann::json::object();
    for (const auto& [cat, n] : r.stats.conventional_by_category) conv[cat] = n;
    nlohmann::json hsos = nlohmann::json::array();
    for (const auto& f : r.hsos) hsos.push_back(detail::hso_to_json(p, f));
    nlohmann::json hsdfs = nlohmann::json::array();
    for (const auto& h : r.hsdfs) hsdfs.push_back(detail::hsdf_to_json(h));
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : r.diagnostics) diags.push_back(d);
    return nlohmann::json{
        {"appId", r.app_id},
        {"toolVersion", kToolVersion},
        {"stats",
         {{"methods", r.stats.methods},
          {"branchSites", r.stats.branch_sites},
          {"hsbCandidates", r.stats.hsb_candidates},
          {"hsos", r.stats.hsos},
          {"conventionalByCategory", conv},
          {"suspicious", r.stats.suspicious},
          {"taintFlows", r.stats.taint_flows},
          {"hsdfs", r.stats.hsdfs}}},
        {"hsos", hsos},
        {"hsdfs", hsdfs},
        {"diagnostics", diags},
    };
}

enum class ReportFormat { Json, Text };

inline std::string emit_report(const Program& p, const AnalysisReport& r, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(p, r).dump(2) + "\n";
    std::ostringstream os;
    os << "app " << r.app_id << "\n";
    os << "stats methods=" << r.stats.methods << " branchSites=" << r.stats.branch_sites
       << " hsbCandidates=" << r.stats.hsb_candidates << " hsos=" << r.stats.hsos
       << " suspicious=" << r.stats.suspicious << " taintFlows=" << r.stats.taint_flows
       << " hsdfs=" << r.stats.hsdfs << "\n";
    for (const auto& [cat, n] : r.stats.conventional_by_category)
        os << "conventional " << cat << "=" << n << "\n";
    for (size_t i = 0; i < r.hsos.size(); ++i) {
        const auto& f = r.hsos[i];
        const auto& cand = f.inference.candidate;
        os << "hso " << i << " " << (f.suspicious ? "suspicious" : "conventional");
        if (!f.suspicious) os << "(" << f.category << ")";
        os << " " << cand.site.method << ":" << cand.site.cond_stmt << " arm=" << cand.arm_name()
           << " categories=";
        bool first = true;
        for (const auto& c : f.inference.categories) {
            if (!first) os << ",";
            os << to_string(c);
            first = false;
        }
        os << " apis=";
        first = true;
        for (const auto& a : cand.distinctive) {
            if (!first) os << ",";
            os << a;
            first = false;
        }
        os << "\n";
    }
    for (size_t i = 0; i < r.hsdfs.size(); ++i) {
        const auto& h = r.hsdfs[i];
        os << "hsdf " << i << " " << h.flow.source_sig << "@" << h.flow.source_method << ":"
           << h.flow.source_stmt << " -> " << h.flow.sink_sig << "@" << h.flow.sink_method << ":"
           << h.flow.sink_stmt << " arg=" << h.flow.arg_index << " hso=" << h.hso_index << "\n";
    }
    for (const auto& d : r.diagnostics) os << "diag " << d << "\n";
    return os.str();
}

}  // namespace hso

#endif  // HSO_REPORT_HPP
