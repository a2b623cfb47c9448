#ifndef HSO_ORIGIN_HPP
#define HSO_ORIGIN_HPP

#include <string>
#include <tuple>

#include "hso/ir.hpp"

// Where a condition value comes from, per the backward trigger analysis.
// Shared value type between the analysis and the brute-force oracle.

namespace hso {

struct Origin {
    enum class Kind { SystemApi, SystemProperty, Constant, EntryPoint, Unresolved };
    Kind kind = Kind::Unresolved;
    std::string what;      // signature, field ref, or entry method key
    Literal literal;       // Kind::Constant
    int param_index = -1;  // Kind::EntryPoint
    std::string reason;    // Unresolved: depth-limit | external-no-body | unmodeled-field

    static Origin system_api(std::string sig) {
        return {Kind::SystemApi, std::move(sig), {}, -1, {}};
    }
    static Origin system_property(std::string ref) {
        return {Kind::SystemProperty, std::move(ref), {}, -1, {}};
    }
    static Origin constant(Literal l) { return {Kind::Constant, {}, std::move(l), -1, {}}; }
    static Origin entry_point(std::string method, int idx) {
        return {Kind::EntryPoint, std::move(method), {}, idx, {}};
    }
    static Origin unresolved(std::string reason) {
        return {Kind::Unresolved, {}, {}, -1, std::move(reason)};
    }

    bool is_system() const { return kind == Kind::SystemApi || kind == Kind::SystemProperty; }

    std::string render() const {
        switch (kind) {
        case Kind::SystemApi: return "SystemApi(" + what + ")";
        case Kind::SystemProperty: return "SystemProperty(" + what + ")";
        case Kind::Constant: {
            std::string v;
            switch (literal.kind) {
            case Literal::Kind::Int: v = std::to_string(literal.int_value); break;
            case Literal::Kind::Bool: v = literal.bool_value ? "true" : "false"; break;
            case Literal::Kind::Str: v = "\"" + literal.str_value + "\""; break;
            }
            return "Constant(" + v + ")";
        }
        case Kind::EntryPoint:
            return "EntryPoint(" + what + ", " + std::to_string(param_index) + ")";
        case Kind::Unresolved: return "Unresolved(" + reason + ")";
        }
        return "?";
    }

    bool operator<(const Origin& o) const {
        return std::tuple(static_cast<int>(kind), what, render(), param_index, reason) <
               std::tuple(static_cast<int>(o.kind), o.what, o.render(), o.param_index, o.reason);
    }
    bool operator==(const Origin& o) const { return !(*this < o) && !(o < *this); }
};

}  // namespace hso

#endif  // HSO_ORIGIN_HPP
