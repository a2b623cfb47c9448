// Command-line front end: analyze IR files for hidden sensitive operations,
// generate labeled synthetic corpora, and score reports against ground truth.
//
// Exit codes: 0 success, 1 suspicious findings with --fail-on-suspicious,
// 2 parse/input errors, 3 catalog/whitelist/config errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hso/corpus.hpp"
#include "hso/oracle.hpp"
#include "hso/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string catalog_dir;
    std::string whitelist_path;
    bool no_whitelist = false;
    bool taint = false;
    bool sources_extended = false;
    long budget = 10000;
    std::string rule2 = "syntactic";
    std::string format = "json";
    std::string out_path;
    std::string dump_cfg;
    bool fail_on_suspicious = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

hso::ApiCatalog load_catalog_for(const AnalyzeArgs& args) {
    hso::CatalogPaths paths;
    if (!args.catalog_dir.empty()) {
        fs::path dir(args.catalog_dir);
        paths.sensitive = (dir / "sensitive.csv").string();
        paths.system = (dir / "system.csv").string();
        paths.triggers = (dir / "triggers.csv").string();
        paths.sources = (dir / "sources.csv").string();
        paths.sinks = (dir / "sinks.csv").string();
    }
    return hso::load_catalog(paths);
}

int run_analyze(const AnalyzeArgs& args) {
    if (args.sources_extended && !args.taint) {
        std::cerr << "error: --sources-extended requires --taint\n";
        return 3;
    }
    hso::ApiCatalog catalog;
    std::vector<hso::ConventionalRule> rules;
    try {
        catalog = load_catalog_for(args);
        if (!args.no_whitelist) {
            rules = args.whitelist_path.empty() ? hso::default_whitelist()
                                                : hso::load_whitelist(args.whitelist_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    hso::AnalysisOptions opts;
    opts.taint = args.taint;
    opts.source_mode = args.sources_extended ? hso::ApiCatalog::SourceMode::DefaultPlusExtended
                                             : hso::ApiCatalog::SourceMode::Default;
    opts.budget = args.budget;
    opts.rule2_closure = args.rule2 == "closure";
    opts.use_whitelist = !args.no_whitelist;
    opts.whitelist = rules;

    std::ostringstream reports;
    int total_suspicious = 0;
    int total_conventional = 0;
    int total_hsdfs = 0;
    for (const auto& input : args.inputs) {
        std::string text;
        try {
            text = read_file(input);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        hso::Program program;
        try {
            program = hso::parse_program(text, fs::path(input).stem().string());
        } catch (const hso::ParseError& e) {
            std::cerr << "error: " << input << ": " << e.what() << "\n";
            return 2;
        }
        if (!args.dump_cfg.empty()) {
            if (const hso::MethodDef* m = program.lookup_method(args.dump_cfg))
                std::cerr << hso::dump_cfg_dot(hso::build_cfg(*m));
        }
        hso::AnalysisResult result = hso::analyze_program(program, catalog, opts);
        reports << hso::emit_report(program, result.report,
                                    args.format == "text" ? hso::ReportFormat::Text
                                                          : hso::ReportFormat::Json);
        total_suspicious += result.report.stats.suspicious;
        for (const auto& [cat, n] : result.report.stats.conventional_by_category) {
            (void)cat;
            total_conventional += n;
        }
        total_hsdfs += result.report.stats.hsdfs;
    }

    if (args.out_path.empty()) {
        std::cout << reports.str();
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << args.out_path << "\n";
            return 3;
        }
        out << reports.str();
    }
    std::cerr << "analyzed " << args.inputs.size() << " file(s): " << total_suspicious
              << " suspicious, " << total_conventional << " conventional, " << total_hsdfs
              << " hidden flow(s)\n";
    if (args.fail_on_suspicious && total_suspicious > 0) return 1;
    return 0;
}

int run_corpus_gen(const std::string& spec_path, std::optional<std::uint64_t> seed,
                   const std::string& out_dir) {
    try {
        nlohmann::json spec_json = nlohmann::json::parse(read_file(spec_path));
        hso::PlantSpec spec = hso::plant_spec_from_json(spec_json);
        if (seed) spec.seed = *seed;
        hso::GeneratedProgram gen = hso::gen_program(spec);
        // Generated output must parse and lint clean by construction.
        hso::Program check = hso::parse_program(gen.ir_text, "app");
        if (!check.lint_warnings.empty()) {
            std::cerr << "error: generated program has lint warnings\n";
            for (const auto& w : check.lint_warnings) std::cerr << "  " << w << "\n";
            return 3;
        }
        fs::create_directories(out_dir);
        std::ofstream ir(fs::path(out_dir) / "app.ir", std::ios::binary);
        ir << gen.ir_text;
        std::ofstream truth(fs::path(out_dir) / "truth.json", std::ios::binary);
        truth << hso::truth_to_json(gen.truth).dump(2) << "\n";
        std::cout << "wrote " << (fs::path(out_dir) / "app.ir").string() << " and "
                  << (fs::path(out_dir) / "truth.json").string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int run_corpus_score(const std::string& report_path, const std::string& truth_path) {
    try {
        nlohmann::json report = nlohmann::json::parse(read_file(report_path));
        hso::GroundTruth truth =
            hso::truth_from_json(nlohmann::json::parse(read_file(truth_path)));
        hso::ScoreResult result = hso::score(report, truth);
        std::cout << hso::score_to_json(result).dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden sensitive operation analyzer"};
    app.require_subcommand(1);

    AnalyzeArgs aa;
    CLI::App* analyze = app.add_subcommand("analyze", "analyze IR files");
    analyze->add_option("inputs", aa.inputs, "IR files")->required()->expected(-1);
    analyze->add_option("--catalog-dir", aa.catalog_dir,
                        "directory with sensitive/system/triggers/sources/sinks CSVs");
    analyze->add_option("--whitelist", aa.whitelist_path, "conventional-usage rules (JSON)");
    analyze->add_flag("--no-whitelist", aa.no_whitelist, "screen nothing; all HSOs suspicious");
    analyze->add_flag("--taint", aa.taint, "run taint analysis and hidden-flow detection");
    analyze->add_flag("--sources-extended", aa.sources_extended,
                      "add the extended source set (requires --taint)");
    analyze->add_option("--budget", aa.budget, "backward-analysis visit budget")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--rule2", aa.rule2, "rule-2 variable check: syntactic|closure")
        ->check(CLI::IsMember({"syntactic", "closure"}));
    analyze->add_option("--format", aa.format, "report format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--out", aa.out_path, "write report(s) to this file");
    analyze->add_option("--dump-cfg", aa.dump_cfg, "dump a method's CFG as DOT to stderr");
    analyze->add_flag("--fail-on-suspicious", aa.fail_on_suspicious,
                      "exit 1 when suspicious HSOs are found");

    CLI::App* corpus = app.add_subcommand("corpus", "synthetic corpus tools");
    corpus->require_subcommand(1);
    std::string spec_path, gen_out = "corpus-out";
    std::uint64_t seed_val = 0;
    bool seed_set = false;
    CLI::App* gen = corpus->add_subcommand("gen", "generate a program with ground truth");
    gen->add_option("--spec", spec_path, "plant spec (JSON)")->required();
    auto* seed_opt = gen->add_option("--seed", seed_val, "override the plant spec's seed");
    gen->add_option("--out", gen_out, "output directory");
    std::string report_path, truth_path;
    CLI::App* scorecmd = corpus->add_subcommand("score", "score a report against ground truth");
    scorecmd->add_option("--report", report_path, "analysis report (JSON)")->required();
    scorecmd->add_option("--truth", truth_path, "ground truth (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    seed_set = seed_opt->count() > 0;

    if (analyze->parsed()) return run_analyze(aa);
    if (gen->parsed())
        return run_corpus_gen(spec_path,
                              seed_set ? std::optional<std::uint64_t>(seed_val) : std::nullopt,
                              gen_out);
    if (scorecmd->parsed()) return run_corpus_score(report_path, truth_path);
    return 3;
}
