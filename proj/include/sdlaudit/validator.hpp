// validator.hpp - the structural well-formedness check and the hint
// extraction that turns its failures into refinement instructions.
//
// Three invariants, checked as a conjunction:
//   I_ref  - every used skill/action/call symbol is declared
//   I_flow - every consumed variable has a producer
//   I_auth - secret/barrier annotations resolve to declared entities
#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdlaudit/parse.hpp"
#include "sdlaudit/symbols.hpp"

namespace sdlaudit {

enum class Invariant { I_auth, I_flow, I_ref };

inline std::string_view to_string(Invariant i) {
    switch (i) {
        case Invariant::I_auth: return "I_auth";
        case Invariant::I_flow: return "I_flow";
        case Invariant::I_ref: return "I_ref";
    }
    return "?";
}

enum class ViolationDetail {
    undeclared_symbol,
    no_producer,
    dangling_annotation,
    bad_gate_kind,
    undeclared_secret,
    undeclared_action,
};

inline std::string_view to_string(ViolationDetail d) {
    switch (d) {
        case ViolationDetail::undeclared_symbol: return "undeclared_symbol";
        case ViolationDetail::no_producer: return "no_producer";
        case ViolationDetail::dangling_annotation: return "dangling_annotation";
        case ViolationDetail::bad_gate_kind: return "bad_gate_kind";
        case ViolationDetail::undeclared_secret: return "undeclared_secret";
        case ViolationDetail::undeclared_action: return "undeclared_action";
    }
    return "?";
}

struct Violation {
    Invariant invariant;
    std::string symbol;
    Fact at;
    ViolationDetail detail;

    auto key() const { return std::tuple(to_string(invariant), symbol, canonical_statement(at.predicate, at.args)); }
    friend bool operator==(const Violation& a, const Violation& b) {
        return a.invariant == b.invariant && a.symbol == b.symbol && a.at == b.at &&
               a.detail == b.detail;
    }
    friend bool operator<(const Violation& a, const Violation& b) { return a.key() < b.key(); }
};

namespace detail {

// A consumed variable counts as produced when an action_param of the
// consuming call's own action declares it, or any other call outputs
// it. Variables are global flow entities, so producers in other
// actions count (the cross-action rule bridges them at derive time).
inline bool variable_produced(const FactBase& fb, const std::string& var,
                              const std::string& consuming_call,
                              const std::string& consuming_action) {
    for (const auto& f : fb.facts()) {
        if (f.predicate == "action_param" && f.args[2] == var && f.args[0] == consuming_action)
            return true;
        if (f.predicate == "call_output" && f.args[2] == var && f.args[0] != consuming_call)
            return true;
    }
    return false;
}

inline bool occurs_in_flow_fact(const FactBase& fb, const std::string& var) {
    for (const auto& f : fb.facts()) {
        if ((f.predicate == "action_param" || f.predicate == "call_input" ||
             f.predicate == "call_output") &&
            f.args[2] == var)
            return true;
    }
    return false;
}

}  // namespace detail

// Returns the (deduplicated, deterministically ordered) violations;
// empty means pass. Assumes a schema-valid base, i.e. parser output.
inline std::vector<Violation> validate(const FactBase& fb) {
    SymbolTable table = symbol_table(fb);
    std::set<Violation> found;

    auto action_of_call = [&](const std::string& call) -> std::string {
        for (const auto& f : fb.facts())
            if (f.predicate == "call" && f.args[0] == call) return f.args[1];
        return {};
    };

    for (const auto& f : fb.facts()) {
        const PredicateSpec* spec = find_predicate(f.predicate);
        for (size_t i = 0; i < spec->args.size(); ++i) {
            const std::string& atom = f.args[i];
            switch (spec->args[i]) {
                case Arg::skill_ref:
                    if (!declared_as(table, atom, SymbolKind::skill))
                        found.insert({Invariant::I_ref, atom, f, ViolationDetail::undeclared_symbol});
                    break;
                case Arg::action_ref:
                    if (!declared_as(table, atom, SymbolKind::action))
                        found.insert({Invariant::I_ref, atom, f, ViolationDetail::undeclared_symbol});
                    break;
                case Arg::call_ref:
                    if (!declared_as(table, atom, SymbolKind::call))
                        found.insert({Invariant::I_ref, atom, f, ViolationDetail::undeclared_symbol});
                    break;
                case Arg::var_consumed:
                    if (!detail::variable_produced(fb, atom, f.args[0], action_of_call(f.args[0])))
                        found.insert({Invariant::I_flow, atom, f, ViolationDetail::no_producer});
                    break;
                case Arg::action_auth:
                    if (!declared_as(table, atom, SymbolKind::action))
                        found.insert({Invariant::I_auth, atom, f, ViolationDetail::undeclared_action});
                    break;
                case Arg::secret_ref:
                    if (!declared_as(table, atom, SymbolKind::secret))
                        found.insert({Invariant::I_auth, atom, f, ViolationDetail::undeclared_secret});
                    break;
                case Arg::var_sanitized:
                    if (!detail::occurs_in_flow_fact(fb, atom))
                        found.insert({Invariant::I_auth, atom, f, ViolationDetail::dangling_annotation});
                    break;
                case Arg::gate_enum:
                    // unreachable through the parser; guards programmatic bases
                    if (!gate_from(atom))
                        found.insert({Invariant::I_auth, atom, f, ViolationDetail::bad_gate_kind});
                    break;
                default:
                    break;
            }
        }
    }
    return std::vector<Violation>(found.begin(), found.end());
}

inline bool validates(const FactBase& fb) { return validate(fb).empty(); }

// One hint per violation, fixed templates, ordered like the violations.
struct HintSet {
    std::vector<std::string> hints;
    std::vector<Violation> violations;
    bool empty() const { return hints.empty(); }
};

struct EmptyViolationsError : std::logic_error {
    EmptyViolationsError() : std::logic_error("diagnose called without violations") {}
};

inline std::string render_hint(const Violation& v) {
    std::string head = std::string(to_string(v.invariant)) + " failed: " + v.symbol + " at " +
                       compact(v.at);
    switch (v.detail) {
        case ViolationDetail::no_producer: return head + " has no producer";
        case ViolationDetail::undeclared_symbol: return head + " is undeclared";
        case ViolationDetail::undeclared_action: return head + " references an undeclared action";
        case ViolationDetail::undeclared_secret: return head + " references an undeclared secret";
        case ViolationDetail::bad_gate_kind: return head + " is not a valid gate kind";
        case ViolationDetail::dangling_annotation:
            return head + " does not occur in any flow fact";
    }
    return head;
}

inline HintSet diagnose(const FactBase&, const std::vector<Violation>& violations) {
    if (violations.empty()) throw EmptyViolationsError{};
    std::set<Violation> uniq(violations.begin(), violations.end());
    HintSet out;
    for (const auto& v : uniq) {
        out.violations.push_back(v);
        out.hints.push_back(render_hint(v));
    }
    return out;
}

}  // namespace sdlaudit
