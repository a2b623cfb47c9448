#ifndef HSO_TESTS_SUPPORT_HPP
#define HSO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "hso/parse.hpp"

#include "../support/random_programs.hpp"

// Include after catch_amalgamated.hpp; helpers use its assertion macros.

namespace hso::test {

using testgen::RandomOptions;
using testgen::random_ir;

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string testdata(const std::string& rel) {
    return std::string(HSO_TESTDATA_DIR) + "/" + rel;
}

inline Program parse_file(const std::string& rel, const std::string& app_id = "app") {
    return parse_program(slurp(testdata(rel)), app_id);
}

// ---------------------------------------------------------------------------
// Minimal JSON-schema checker covering the subset the bundled schema uses:
// type, required, properties, additionalProperties, items, enum.

inline bool schema_check(const nlohmann::json& schema, const nlohmann::json& value,
                         std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (schema.contains("enum")) {
        for (const auto& e : schema["enum"])
            if (e == value) return true;
        return fail("value not in enum: " + value.dump());
    }
    if (schema.contains("type")) {
        std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number()) || (t == "boolean" && value.is_boolean());
        if (!ok) return fail("expected type " + t + ", got " + value.dump());
    }
    if (value.is_object()) {
        for (const auto& req : schema.value("required", nlohmann::json::array())) {
            if (!value.contains(req.get<std::string>()))
                return fail("missing required key " + req.get<std::string>());
        }
        const auto props = schema.value("properties", nlohmann::json::object());
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props.contains(it.key())) {
                if (!schema_check(props[it.key()], it.value(), why)) return false;
            } else if (schema.contains("additionalProperties")) {
                if (!schema_check(schema["additionalProperties"], it.value(), why)) return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        for (const auto& item : value)
            if (!schema_check(schema["items"], item, why)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Naive dominator oracle: d dominates b (from root) iff removing d leaves b
// unreachable.

inline bool oracle_dominates(const std::set<std::pair<int, int>>& edges, int root, int d, int b) {
    if (d == b) return true;
    if (root == d) return true;
    if (root == b) return false;
    std::set<int> seen{root};
    std::vector<int> work{root};
    while (!work.empty()) {
        int n = work.back();
        work.pop_back();
        if (n == b) return false;
        for (const auto& [f, t] : edges) {
            if (f != n || t == d) continue;
            if (seen.insert(t).second) work.push_back(t);
        }
    }
    return true;
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

// Run a shell command capturing stdout; callers append stderr redirection.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

}  // namespace hso::test

#endif  // HSO_TESTS_SUPPORT_HPP
