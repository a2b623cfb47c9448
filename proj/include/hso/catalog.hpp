#ifndef HSO_CATALOG_HPP
#define HSO_CATALOG_HPP

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hso/defaults.hpp"

// Declarative catalogs driving every classification: permission-protected
// (sensitive) APIs, system APIs and system properties, the trigger-category
// table, taint sources (default + extended) and sinks.
//
// CSV formats (header row required, UTF-8):
//   sensitive.csv  signature,permission
//   system.csv     signature_or_field,kind      kind in {api,property}
//   triggers.csv   signature_or_field,category
//   sources.csv    signature,origin             origin in {default,extended}
//   sinks.csv      signature

namespace hso {

struct CatalogError : std::runtime_error {
    std::string file;
    int line;
    CatalogError(std::string f, int l, const std::string& msg)
        : std::runtime_error(f + ":" + std::to_string(l) + ": " + msg),
          file(std::move(f)),
          line(l) {}
};

enum class TriggerCategory { Time, SystemProperties, Location, Sms, PackageManager, Miscellaneous };

inline const char* to_string(TriggerCategory c) {
    switch (c) {
    case TriggerCategory::Time: return "Time";
    case TriggerCategory::SystemProperties: return "SystemProperties";
    case TriggerCategory::Location: return "Location";
    case TriggerCategory::Sms: return "SMS";
    case TriggerCategory::PackageManager: return "PackageManager";
    case TriggerCategory::Miscellaneous: return "Miscellaneous";
    }
    return "?";
}

inline std::optional<TriggerCategory> trigger_category_of(const std::string& name) {
    if (name == "Time") return TriggerCategory::Time;
    if (name == "SystemProperties") return TriggerCategory::SystemProperties;
    if (name == "Location") return TriggerCategory::Location;
    if (name == "SMS") return TriggerCategory::Sms;
    if (name == "PackageManager") return TriggerCategory::PackageManager;
    if (name == "Miscellaneous") return TriggerCategory::Miscellaneous;
    return std::nullopt;
}

class ApiCatalog {
public:
    std::map<std::string, std::set<std::string>> sensitive;  // signature -> permissions
    std::set<std::string> system_apis;
    std::set<std::string> system_properties;  // class#field
    std::map<std::string, TriggerCategory> trigger_categories;
    std::set<std::string> sources_default;
    std::set<std::string> sources_extended;
    std::set<std::string> sinks;

    bool is_sensitive(const std::string& sig) const { return sensitive.count(sig) > 0; }
    bool is_system_api(const std::string& sig) const { return system_apis.count(sig) > 0; }
    bool is_system_property(const std::string& ref) const {
        return system_properties.count(ref) > 0;
    }

    // Trigger-category table lookup; Miscellaneous is the fallback.
    TriggerCategory classify_trigger_origin(const std::string& sig_or_field) const {
        auto it = trigger_categories.find(sig_or_field);
        return it == trigger_categories.end() ? TriggerCategory::Miscellaneous : it->second;
    }

    enum class SourceMode { Default, DefaultPlusExtended };

    std::set<std::string> sources(SourceMode mode) const {
        std::set<std::string> out = sources_default;
        if (mode == SourceMode::DefaultPlusExtended)
            out.insert(sources_extended.begin(), sources_extended.end());
        return out;
    }
    bool is_sink(const std::string& sig) const { return sinks.count(sig) > 0; }
};

namespace detail {

// Rows of two trimmed cells; tolerates \r\n input.
inline std::vector<std::pair<int, std::vector<std::string>>> csv_rows(const std::string& text,
                                                                      const std::string& file,
                                                                      size_t want_cols) {
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        size_t a = trimmed.find_first_not_of(" \t");
        if (a == std::string::npos) continue;  // blank line
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        if (cells.size() != want_cols)
            throw CatalogError(file, lineno,
                               "expected " + std::to_string(want_cols) + " columns, got " +
                                   std::to_string(cells.size()));
        rows.emplace_back(lineno, std::move(cells));
    }
    if (rows.empty()) throw CatalogError(file, 1, "missing header row");
    rows.erase(rows.begin());  // header
    return rows;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

struct CatalogText {
    std::string sensitive_csv = defaults::kSensitiveCsv;
    std::string system_csv = defaults::kSystemCsv;
    std::string triggers_csv = defaults::kTriggersCsv;
    std::string sources_csv = defaults::kSourcesCsv;
    std::string sinks_csv = defaults::kSinksCsv;
};

struct CatalogPaths {
    std::optional<std::string> sensitive;
    std::optional<std::string> system;
    std::optional<std::string> triggers;
    std::optional<std::string> sources;
    std::optional<std::string> sinks;
};

inline ApiCatalog load_catalog_from_text(const CatalogText& text) {
    ApiCatalog cat;
    for (const auto& [lineno, cells] : detail::csv_rows(text.sensitive_csv, "sensitive.csv", 2)) {
        if (cells[0].empty() || cells[1].empty())
            throw CatalogError("sensitive.csv", lineno, "empty cell");
        cat.sensitive[cells[0]].insert(cells[1]);
    }
    for (const auto& [lineno, cells] : detail::csv_rows(text.system_csv, "system.csv", 2)) {
        if (cells[1] == "api") {
            cat.system_apis.insert(cells[0]);
        } else if (cells[1] == "property") {
            cat.system_properties.insert(cells[0]);
        } else {
            throw CatalogError("system.csv", lineno, "unknown kind '" + cells[1] + "'");
        }
    }
    for (const auto& [lineno, cells] : detail::csv_rows(text.triggers_csv, "triggers.csv", 2)) {
        auto catg = trigger_category_of(cells[1]);
        if (!catg)
            throw CatalogError("triggers.csv", lineno, "unknown category '" + cells[1] + "'");
        auto it = cat.trigger_categories.find(cells[0]);
        if (it != cat.trigger_categories.end() && it->second != *catg)
            throw CatalogError("triggers.csv", lineno,
                               "conflicting category for '" + cells[0] + "'");
        cat.trigger_categories[cells[0]] = *catg;
    }
    for (const auto& [lineno, cells] : detail::csv_rows(text.sources_csv, "sources.csv", 2)) {
        if (cells[1] == "default") {
            cat.sources_default.insert(cells[0]);
        } else if (cells[1] == "extended") {
            cat.sources_extended.insert(cells[0]);
        } else {
            throw CatalogError("sources.csv", lineno, "unknown origin '" + cells[1] + "'");
        }
    }
    for (const auto& [lineno, cells] : detail::csv_rows(text.sinks_csv, "sinks.csv", 1)) {
        if (cells[0].empty()) throw CatalogError("sinks.csv", lineno, "empty signature");
        cat.sinks.insert(cells[0]);
    }
    // Every permission-protected API is a system API.
    for (const auto& [sig, perms] : cat.sensitive) {
        (void)perms;
        cat.system_apis.insert(sig);
    }
    return cat;
}

inline ApiCatalog load_catalog(const CatalogPaths& paths = {}) {
    CatalogText text;
    if (paths.sensitive) text.sensitive_csv = detail::slurp(*paths.sensitive);
    if (paths.system) text.system_csv = detail::slurp(*paths.system);
    if (paths.triggers) text.triggers_csv = detail::slurp(*paths.triggers);
    if (paths.sources) text.sources_csv = detail::slurp(*paths.sources);
    if (paths.sinks) text.sinks_csv = detail::slurp(*paths.sinks);
    return load_catalog_from_text(text);
}

}  // namespace hso

#endif  // HSO_CATALOG_HPP
