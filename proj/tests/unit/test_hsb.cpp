#include <catch_amalgamated.hpp>

#include "support.hpp"

#include "hso/hsb.hpp"

using namespace hso;
using hso::test::parse_file;

namespace {

HsbResult run_hsbs(const Program& p, const ApiCatalog& cat, HsbOptions opts = {}) {
    CallGraph cg = build_callgraph(p);
    return locate_hsbs(p, cg, cat, opts);
}

}  // namespace

TEST_CASE("emulator-probe sample yields exactly one candidate with four distinctive APIs") {
    auto p = parse_file("emulator_probe_sms_exfil.ir");
    auto cat = load_catalog();
    auto res = run_hsbs(p, cat);
    REQUIRE(res.candidates.size() == 1);
    const auto& c = res.candidates[0];
    CHECK(c.then_arm);
    CHECK(c.site.method == "com.example.MainActivity#onCreate");
    CHECK(c.distinctive ==
          std::set<std::string>{"android.telephony.SmsManager#sendDataMessage",
                                "android.telephony.TelephonyManager#getDeviceId",
                                "android.telephony.TelephonyManager#getLine1Number",
                                "android.telephony.TelephonyManager#getSubscriberId"});
    CHECK(c.sibling_apis.empty());
    CHECK_FALSE(c.region().empty());
}

TEST_CASE("rule 1: identical sensitive APIs on both arms disqualify the site") {
    const char* src =
        "class t.C { plain method void m(int a, android.telephony.TelephonyManager tm) {\n"
        "  local java.lang.String x;\n"
        "  if a > 0 goto LT else LE;\n"
        "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  goto LJ;\n"
        "  LE: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "both");
    CHECK(run_hsbs(p, load_catalog()).candidates.empty());
}

TEST_CASE("rule 2: an arm touching a condition variable is rejected") {
    const char* src =
        "class t.C { plain method void m(int a, android.telephony.TelephonyManager tm) {\n"
        "  local java.lang.String x;\n"
        "  local int y;\n"
        "  if a > 0 goto LT else LJ;\n"
        "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  y = a + 1;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "rule2");
    CHECK(run_hsbs(p, load_catalog()).candidates.empty());

    SECTION("same arm without the condition-variable read qualifies") {
        const char* ok =
            "class t.C { plain method void m(int a, android.telephony.TelephonyManager tm) {\n"
            "  local java.lang.String x;\n"
            "  if a > 0 goto LT else LJ;\n"
            "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
            "  LJ: return;\n"
            "} }";
        auto q = parse_program(ok, "rule2ok");
        CHECK(run_hsbs(q, load_catalog()).candidates.size() == 1);
    }
}

TEST_CASE("sensitive APIs are collected through transitive callees") {
    const char* src =
        "class t.C {\n"
        "  plain method void m(int a, android.location.LocationManager lm) {\n"
        "    if a > 0 goto LT else LJ;\n"
        "    LT: call static t.C#helper(lm);\n"
        "    LJ: return;\n"
        "  }\n"
        "  plain method void helper(android.location.LocationManager lm) {\n"
        "    local java.lang.String loc;\n"
        "    loc = call virtual android.location.LocationManager#getLastKnownLocation() on lm;\n"
        "    return;\n"
        "  }\n"
        "}";
    auto p = parse_program(src, "trans");
    auto cat = load_catalog();
    auto res = run_hsbs(p, cat);
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates[0].hsb_apis ==
          std::set<std::string>{"android.location.LocationManager#getLastKnownLocation"});

    SECTION("collect_branch_sensitive_apis agrees on the raw region") {
        CallGraph cg = build_callgraph(p);
        auto apis = collect_branch_sensitive_apis(p, cg, cat, "t.C#m", {1});
        CHECK(apis ==
              std::set<std::string>{"android.location.LocationManager#getLastKnownLocation"});
    }
}

TEST_CASE("no depth limit: sensitive APIs two helper levels down still count") {
    const char* src =
        "class t.C {\n"
        "  plain method void m(int a, android.location.LocationManager lm) {\n"
        "    if a > 0 goto LT else LJ;\n"
        "    LT: call static t.C#h1(lm);\n"
        "    LJ: return;\n"
        "  }\n"
        "  plain method void h1(android.location.LocationManager lm) {\n"
        "    call static t.C#h2(lm);\n"
        "    return;\n"
        "  }\n"
        "  plain method void h2(android.location.LocationManager lm) {\n"
        "    local java.lang.String loc;\n"
        "    loc = call virtual android.location.LocationManager#getLastKnownLocation() on lm;\n"
        "    return;\n"
        "  }\n"
        "}";
    auto p = parse_program(src, "deep");
    auto res = run_hsbs(p, load_catalog());
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates[0].hsb_apis ==
          std::set<std::string>{"android.location.LocationManager#getLastKnownLocation"});
}

TEST_CASE("both arms may qualify independently") {
    const char* src =
        "class t.C { plain method void m(int a, android.telephony.TelephonyManager tm,\n"
        "    android.location.LocationManager lm) {\n"
        "  local java.lang.String x;\n"
        "  local java.lang.String y;\n"
        "  if a > 0 goto LT else LE;\n"
        "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  goto LJ;\n"
        "  LE: y = call virtual android.location.LocationManager#getLastKnownLocation() on lm;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "botharms");
    auto res = run_hsbs(p, load_catalog());
    REQUIRE(res.candidates.size() == 2);
    CHECK(res.candidates[0].then_arm);
    CHECK_FALSE(res.candidates[1].then_arm);
    CHECK(res.candidates[0].distinctive ==
          std::set<std::string>{"android.telephony.TelephonyManager#getDeviceId"});
    CHECK(res.candidates[1].distinctive ==
          std::set<std::string>{"android.location.LocationManager#getLastKnownLocation"});
}

TEST_CASE("swapping the two arms swaps the labels and nothing else") {
    for (std::uint64_t seed : {9u, 42u, 64u}) {
        hso::test::RandomOptions opt;
        opt.seed = seed;
        auto p = parse_program(hso::test::random_ir(opt), "rnd");
        // Swap then/else targets of every conditional.
        Program swapped = p;
        for (auto& cd : swapped.classes)
            for (auto& m : cd.methods)
                for (auto& st : m.body)
                    if (auto* c = std::get_if<CondStmt>(&st.form))
                        std::swap(c->then_label, c->else_label);
        auto cat = load_catalog();
        auto base = run_hsbs(p, cat);
        auto swap = run_hsbs(swapped, cat);
        REQUIRE(base.candidates.size() == swap.candidates.size());
        auto key = [](const HsbCandidate& c, bool flip) {
            return std::tuple(c.site.method, c.site.cond_stmt, flip ? !c.then_arm : c.then_arm,
                              c.distinctive);
        };
        std::set<std::tuple<std::string, int, bool, std::set<std::string>>> a, b;
        for (const auto& c : base.candidates) a.insert(key(c, false));
        for (const auto& c : swap.candidates) b.insert(key(c, true));
        INFO("seed " << seed);
        CHECK(a == b);
    }
}

TEST_CASE("shrinking the sensitive catalog never creates candidates") {
    auto p = parse_file("emulator_probe_sms_exfil.ir");
    auto cat = load_catalog();
    auto base = run_hsbs(p, cat);
    ApiCatalog smaller = cat;
    smaller.sensitive.erase("android.telephony.TelephonyManager#getDeviceId");
    auto shrunk = run_hsbs(p, smaller);
    // Every surviving candidate existed before.
    for (const auto& c : shrunk.candidates) {
        bool existed = false;
        for (const auto& b : base.candidates)
            if (b.site.method == c.site.method && b.site.cond_stmt == c.site.cond_stmt &&
                b.then_arm == c.then_arm)
                existed = true;
        CHECK(existed);
    }
}

TEST_CASE("rule-2 closure variant is strictly stricter") {
    // The arm uses u, whose definition reads the condition variable; the
    // syntactic check passes, the closure check rejects.
    const char* src =
        "class t.C { plain method void m(int a, android.telephony.TelephonyManager tm) {\n"
        "  local int u;\n"
        "  local java.lang.String x;\n"
        "  local int sink;\n"
        "  u = a + 1;\n"
        "  if a > 0 goto LT else LJ;\n"
        "  LT: x = call virtual android.telephony.TelephonyManager#getDeviceId() on tm;\n"
        "  sink = u;\n"
        "  LJ: return;\n"
        "} }";
    auto p = parse_program(src, "closure");
    auto cat = load_catalog();
    CHECK(run_hsbs(p, cat).candidates.size() == 1);
    HsbOptions strict;
    strict.rule2_closure = true;
    CHECK(run_hsbs(p, cat, strict).candidates.empty());
}

TEST_CASE("candidates never have empty regions") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        hso::test::RandomOptions opt;
        opt.seed = seed;
        auto p = parse_program(hso::test::random_ir(opt), "rnd");
        for (const auto& c : run_hsbs(p, load_catalog()).candidates) {
            INFO("seed " << seed << " " << c.site.method);
            CHECK_FALSE(c.region().empty());
        }
    }
}
