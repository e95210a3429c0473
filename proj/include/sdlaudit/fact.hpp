// fact.hpp - SDL ground facts, the predicate schema table, and fact bases
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdlaudit/atoms.hpp"

namespace sdlaudit {

// Role of one argument position. Drives arity/enum checking in the
// parser, symbol table construction, and reference validation.
enum class Arg {
    skill_decl,    // skill(s)
    skill_ref,     // action 2nd arg, doc_claim 1st arg
    action_decl,   // action 1st arg
    action_ref,    // call 2nd arg, action_param/action_trigger 1st arg
    action_auth,   // barrier_gate 1st arg, secret_allowed 2nd arg (I_auth)
    call_decl,     // call 1st arg
    call_ref,      // call_next/call_conditional args, flow-fact 1st args, target/body marker args
    var_decl,      // action_param/call_output 3rd arg, secret_var 1st arg
    var_consumed,  // call_input 3rd arg (I_flow, not I_ref)
    var_sanitized, // barrier_sanitize 1st arg (I_auth)
    secret_decl,   // secret(n)
    secret_ref,    // secret_var 2nd arg, secret_allowed 1st arg (I_auth)
    label,         // parameter names; opaque
    target,        // call_target 2nd arg; opaque
    effect_enum,
    trigger_enum,
    gate_enum,
    claim_enum,
};

struct PredicateSpec {
    std::string_view name;
    std::vector<Arg> args;
};

// The full fact schema, one entry per predicate, grouped by role.
inline const std::vector<PredicateSpec>& schema() {
    static const std::vector<PredicateSpec> table = {
        // skeleton
        {"skill", {Arg::skill_decl}},
        {"action", {Arg::action_decl, Arg::skill_ref}},
        {"call", {Arg::call_decl, Arg::action_ref, Arg::effect_enum}},
        {"call_next", {Arg::call_ref, Arg::call_ref}},
        {"action_param", {Arg::action_ref, Arg::label, Arg::var_decl}},
        // data flow
        {"call_input", {Arg::call_ref, Arg::label, Arg::var_consumed}},
        {"call_output", {Arg::call_ref, Arg::label, Arg::var_decl}},
        // annotations
        {"action_trigger", {Arg::action_ref, Arg::trigger_enum}},
        {"call_target", {Arg::call_ref, Arg::target}},
        {"call_target_trusted", {Arg::call_ref}},
        {"call_target_sensitive", {Arg::call_ref}},
        {"call_target_unresolved", {Arg::call_ref}},
        // secrets & barriers
        {"secret", {Arg::secret_decl}},
        {"secret_var", {Arg::var_decl, Arg::secret_ref}},
        {"secret_allowed", {Arg::secret_ref, Arg::action_auth}},
        {"barrier_gate", {Arg::action_auth, Arg::gate_enum}},
        {"barrier_sanitize", {Arg::var_sanitized, Arg::label}},
        // documentation
        {"doc_claim", {Arg::skill_ref, Arg::claim_enum}},
        // code-level markers
        {"call_body_obfuscated", {Arg::call_ref}},
        {"call_body_encoded_binary", {Arg::call_ref}},
        {"call_conditional", {Arg::call_ref, Arg::call_ref}},
    };
    return table;
}

inline const PredicateSpec* find_predicate(std::string_view name) {
    for (const auto& p : schema())
        if (p.name == name) return &p;
    return nullptr;
}

inline bool enum_value_ok(Arg kind, std::string_view value) {
    switch (kind) {
        case Arg::effect_enum: return effect_from(value).has_value();
        case Arg::trigger_enum: return trigger_from(value).has_value();
        case Arg::gate_enum: return gate_from(value).has_value();
        case Arg::claim_enum: return claim_from(value).has_value();
        default: return true;
    }
}

inline bool valid_bare_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) {
        return head(c) || (c >= '0' && c <= '9') || c == '.' || c == '/' || c == ':' || c == '-';
    };
    if (!head(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), tail);
}

// One ground tuple. Args hold unquoted atom values.
struct Fact {
    std::string predicate;
    std::vector<std::string> args;

    auto operator<=>(const Fact&) const = default;
    const std::string& arg(size_t i) const { return args[i]; }
};

inline Fact make_fact(std::string predicate, std::vector<std::string> args) {
    return Fact{std::move(predicate), std::move(args)};
}

// Renders a fact the way hints and witnesses cite it: no quotes, no
// spaces, no trailing period, e.g. call_input(c2,msg,v).
inline std::string compact(const Fact& f) {
    std::string out = f.predicate;
    out += '(';
    for (size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ',';
        out += f.args[i];
    }
    out += ')';
    return out;
}

struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A duplicate-free, canonically ordered set of facts for one skill.
// Immutable by convention once built; every accessor is const and the
// engine/detectors only ever read it.
class FactBase {
public:
    FactBase() = default;

    // Checks arity and enum membership; duplicate facts are dropped
    // (set semantics). Throws SchemaError on malformed programmatic
    // input; the parser reports ParseError before ever calling this.
    void add(Fact f) {
        const PredicateSpec* spec = find_predicate(f.predicate);
        if (!spec) throw SchemaError("unknown predicate: " + f.predicate);
        if (spec->args.size() != f.args.size())
            throw SchemaError("bad arity for " + f.predicate);
        for (size_t i = 0; i < f.args.size(); ++i)
            if (!enum_value_ok(spec->args[i], f.args[i]))
                throw SchemaError("bad enum value in " + compact(f));
        if (f.predicate == "skill") {
            if (!skill_id_.empty() && skill_id_ != f.args[0])
                throw SchemaError("duplicate skill declaration: " + f.args[0]);
            skill_id_ = f.args[0];
        }
        auto it = std::lower_bound(facts_.begin(), facts_.end(), f);
        if (it != facts_.end() && *it == f) return;
        facts_.insert(it, std::move(f));
    }

    const std::vector<Fact>& facts() const { return facts_; }
    const std::string& skill_id() const { return skill_id_; }
    bool empty() const { return facts_.empty(); }
    size_t size() const { return facts_.size(); }

    bool contains(const Fact& f) const {
        return std::binary_search(facts_.begin(), facts_.end(), f);
    }

    // All facts of one predicate, in canonical order.
    std::vector<const Fact*> with_predicate(std::string_view pred) const {
        std::vector<const Fact*> out;
        for (const auto& f : facts_)
            if (f.predicate == pred) out.push_back(&f);
        return out;
    }

    bool has(std::string_view pred, std::initializer_list<std::string_view> args) const {
        for (const auto& f : facts_) {
            if (f.predicate != pred || f.args.size() != args.size()) continue;
            bool same = true;
            size_t i = 0;
            for (auto a : args)
                if (f.args[i++] != a) { same = false; break; }
            if (same) return true;
        }
        return false;
    }

    FactBase without(const Fact& f) const {
        FactBase out;
        for (const auto& g : facts_)
            if (!(g == f)) out.add(g);
        return out;
    }

    friend bool operator==(const FactBase& a, const FactBase& b) {
        return a.facts_ == b.facts_;
    }

private:
    std::string skill_id_;
    std::vector<Fact> facts_;  // sorted, unique
};

}  // namespace sdlaudit
