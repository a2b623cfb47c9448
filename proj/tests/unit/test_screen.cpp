#include <catch_amalgamated.hpp>

#include "support.hpp"

#include "hso/pipeline.hpp"

using namespace hso;
using hso::test::parse_file;

namespace {

AnalysisResult analyze_rel(const std::string& rel, bool use_whitelist = true) {
    auto p = parse_file(rel);
    AnalysisOptions opts;
    opts.use_whitelist = use_whitelist;
    if (use_whitelist) opts.whitelist = default_whitelist();
    return analyze_program(p, load_catalog(), opts);
}

}  // namespace

TEST_CASE("default whitelist has the seven built-in rules") {
    auto rules = default_whitelist();
    REQUIRE(rules.size() == 7);
    std::set<std::string> cats;
    for (const auto& r : rules) {
        cats.insert(r.category);
        CHECK_FALSE(r.origin_patterns.empty());
    }
    CHECK(cats == std::set<std::string>{"File", "Intent", "Network", "Permission", "SdkVersion",
                                        "SharedPreferences", "UserInterface"});
}

TEST_CASE("whitelist parsing accepts the empty study configuration") {
    CHECK(parse_whitelist("[]").empty());
}

TEST_CASE("whitelist validation errors") {
    CHECK_THROWS_AS(parse_whitelist("{}"), WhitelistError);
    CHECK_THROWS_AS(parse_whitelist("[{\"category\":\"X\",\"originPatterns\":[]}]"),
                    WhitelistError);
    CHECK_THROWS_AS(parse_whitelist("[{\"originPatterns\":[\"a#b\"]}]"), WhitelistError);
    CHECK_THROWS_AS(
        parse_whitelist(
            "[{\"category\":\"X\",\"originPatterns\":[\"a#b\"],\"context\":\"sometimes\"}]"),
        WhitelistError);
    CHECK_THROWS_AS(parse_whitelist("not json"), WhitelistError);

    SECTION("custom categories are allowed") {
        auto rules =
            parse_whitelist("[{\"category\":\"VendorHealth\",\"originPatterns\":[\"a#b\"]}]");
        REQUIRE(rules.size() == 1);
        CHECK(rules[0].category == "VendorHealth");
        CHECK(rules[0].context == ConventionalRule::Context::None);
    }
}

TEST_CASE("conventional corpus: one verdict per category, zero suspicious") {
    const std::pair<const char*, const char*> files[] = {
        {"conventional/sdk_version.ir", "SdkVersion"},
        {"conventional/user_interface.ir", "UserInterface"},
        {"conventional/file_handling.ir", "File"},
        {"conventional/permission_check.ir", "Permission"},
        {"conventional/network_status.ir", "Network"},
        {"conventional/intent_action.ir", "Intent"},
        {"conventional/shared_preferences.ir", "SharedPreferences"},
    };
    for (const auto& [rel, category] : files) {
        INFO(rel);
        auto res = analyze_rel(rel);
        REQUIRE(res.findings.size() == 1);
        CHECK_FALSE(res.findings[0].suspicious);
        CHECK(res.findings[0].category == category);
        CHECK(res.report.stats.suspicious == 0);
    }
}

TEST_CASE("trigger corpus stays suspicious under the default whitelist") {
    for (const char* rel :
         {"triggers/time_bomb.ir", "triggers/fingerprint_check.ir", "triggers/sms_reply.ir",
          "triggers/country_gate.ir", "triggers/av_probe.ir", "triggers/item_click_gate.ir"}) {
        INFO(rel);
        auto res = analyze_rel(rel);
        REQUIRE(res.findings.size() == 1);
        CHECK(res.findings[0].suspicious);
    }
}

TEST_CASE("the emulator probe is suspicious, not conventional") {
    auto res = analyze_rel("emulator_probe_sms_exfil.ir");
    REQUIRE(res.findings.size() == 1);
    CHECK(res.findings[0].suspicious);
}

TEST_CASE("one rule must cover every system origin") {
    // View#getId alone matches the UserInterface rule, but a second origin
    // outside the rule's patterns makes the trigger mixed, hence suspicious.
    const char* src =
        "class t.C { callback method void onClick(android.view.View v,\n"
        "    android.webkit.WebView web) {\n"
        "  local int id1;\n"
        "  local int day;\n"
        "  local java.util.Calendar cal;\n"
        "  local int sum;\n"
        "  id1 = call virtual android.view.View#getId() on v;\n"
        "  cal = call static java.util.Calendar#getInstance();\n"
        "  day = call virtual java.util.Calendar#get(6) on cal;\n"
        "  sum = id1 + day;\n"
        "  if sum > 5 goto LT else LJ;\n"
        "  LT: call virtual android.webkit.WebView#goBack() on web;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "mixed");
    AnalysisOptions opts;
    opts.whitelist = default_whitelist();
    auto res = analyze_program(p, load_catalog(), opts);
    REQUIRE(res.findings.size() == 1);
    CHECK(res.findings[0].suspicious);
}

TEST_CASE("context constraints gate the rule") {
    // Same id-comparison shape, but in a plain method: the UserInterface
    // rule requires a callback context, so the finding stays suspicious.
    const char* src =
        "class t.C { plain method void route(android.view.View v,\n"
        "    android.webkit.WebView web) {\n"
        "  local int id1;\n"
        "  if id1 > 0 goto LT else LJ;\n"
        "  LT: call virtual android.webkit.WebView#goBack() on web;\n"
        "  LJ: return;\n"
        "} }";
    // Give id1 a definition first; keep the program lint clean.
    std::string fixed = std::string(src);
    fixed.insert(fixed.find("  if id1"), "  id1 = call virtual android.view.View#getId() on v;\n");
    auto p = parse_program(fixed, "plainctx");
    AnalysisOptions opts;
    opts.whitelist = default_whitelist();
    auto res = analyze_program(p, load_catalog(), opts);
    REQUIRE(res.findings.size() == 1);
    CHECK(res.findings[0].suspicious);
}

TEST_CASE("lexicographically smallest category wins a full tie") {
    const char* src =
        "class t.C { plain method void m(android.content.Context ctx,\n"
        "    android.telephony.TelephonyManager tm) {\n"
        "  local int flag;\n"
        "  local java.lang.String x;\n"
        "  flag = call virtual android.content.Context#checkSelfPermission(\"p\") on ctx;\n"
        "  if flag == 0 goto LT else LJ;\n"
        "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "tie");
    std::vector<ConventionalRule> rules = parse_whitelist(
        "[{\"category\":\"ZPolicy\",\"originPatterns\":"
        "[\"android.content.Context#checkSelfPermission\"]},"
        "{\"category\":\"APolicy\",\"originPatterns\":"
        "[\"android.content.Context#checkSelfPermission\"]}]");
    AnalysisOptions opts;
    opts.whitelist = rules;
    auto res = analyze_program(p, load_catalog(), opts);
    REQUIRE(res.findings.size() == 1);
    CHECK_FALSE(res.findings[0].suspicious);
    CHECK(res.findings[0].category == "APolicy");

    SECTION("rule file order does not matter") {
        std::vector<ConventionalRule> reversed{rules[1], rules[0]};
        opts.whitelist = reversed;
        auto res2 = analyze_program(p, load_catalog(), opts);
        CHECK(res2.findings[0].category == "APolicy");
    }
}

TEST_CASE("partition and monotonicity of the screening funnel") {
    for (const char* rel :
         {"emulator_probe_sms_exfil.ir", "conventional/sdk_version.ir",
          "conventional/network_status.ir", "triggers/time_bomb.ir"}) {
        INFO(rel);
        auto with = analyze_rel(rel, true);
        auto without = analyze_rel(rel, false);
        int conventional = 0;
        for (const auto& [cat, n] : with.report.stats.conventional_by_category) {
            (void)cat;
            conventional += n;
        }
        CHECK(with.report.stats.suspicious + conventional == with.report.stats.hsos);
        // Empty whitelist: everything suspicious, same detections.
        CHECK(without.report.stats.suspicious == without.report.stats.hsos);
        CHECK(without.report.stats.hsos == with.report.stats.hsos);
        // Adding rules never increases the suspicious count.
        CHECK(with.report.stats.suspicious <= without.report.stats.suspicious);
    }
}

TEST_CASE("screen_all over an empty inference list") {
    auto p = parse_program("class A { plain method void m() { return; } }", "none");
    CHECK(screen_all(p, {}, default_whitelist()).empty());
}

TEST_CASE("explanation invariant: hidden operations carry a non-empty slice") {
    for (const char* rel : {"emulator_probe_sms_exfil.ir", "triggers/country_gate.ir",
                            "conventional/sdk_version.ir"}) {
        auto res = analyze_rel(rel);
        for (const auto& f : res.findings) {
            CHECK(f.inference.is_hso);
            CHECK_FALSE(f.inference.ctb.empty());
            CHECK_FALSE(f.inference.origins.empty());
        }
    }
}
