// symbols.hpp - declaration/use index over a fact base
#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdlaudit/fact.hpp"

namespace sdlaudit {

enum class SymbolKind { skill, action, call, variable, secret, conflicted };

inline std::string_view to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::skill: return "skill";
        case SymbolKind::action: return "action";
        case SymbolKind::call: return "call";
        case SymbolKind::variable: return "variable";
        case SymbolKind::secret: return "secret";
        case SymbolKind::conflicted: return "conflicted";
    }
    return "?";
}

struct SymbolInfo {
    SymbolKind kind = SymbolKind::conflicted;
    std::vector<Fact> declaring;
    std::vector<Fact> using_;
};

using SymbolTable = std::map<std::string, SymbolInfo>;

namespace detail {

inline std::optional<SymbolKind> decl_kind(Arg a) {
    switch (a) {
        case Arg::skill_decl: return SymbolKind::skill;
        case Arg::action_decl: return SymbolKind::action;
        case Arg::call_decl: return SymbolKind::call;
        case Arg::var_decl: return SymbolKind::variable;
        case Arg::secret_decl: return SymbolKind::secret;
        default: return std::nullopt;
    }
}

inline std::optional<SymbolKind> use_kind(Arg a) {
    switch (a) {
        case Arg::skill_ref: return SymbolKind::skill;
        case Arg::action_ref:
        case Arg::action_auth: return SymbolKind::action;
        case Arg::call_ref: return SymbolKind::call;
        case Arg::var_consumed:
        case Arg::var_sanitized: return SymbolKind::variable;
        case Arg::secret_ref: return SymbolKind::secret;
        default: return std::nullopt;  // labels, targets, enums
    }
}

}  // namespace detail

// Declarations come from skeleton facts (skill/action/call), the
// variable-producing positions (call_output, action_param, secret_var)
// and secret(). Every other symbol position is a use. A name occurring
// with two different kinds is reported as conflicted, never thrown.
inline SymbolTable symbol_table(const FactBase& fb) {
    SymbolTable table;
    auto touch = [&](const std::string& name, SymbolKind kind, const Fact& f, bool decl) {
        auto [it, inserted] = table.try_emplace(name);
        SymbolInfo& info = it->second;
        if (inserted) {
            info.kind = kind;
        } else if (info.kind != kind && info.kind != SymbolKind::conflicted) {
            info.kind = SymbolKind::conflicted;
        }
        (decl ? info.declaring : info.using_).push_back(f);
    };
    for (const auto& f : fb.facts()) {
        const PredicateSpec* spec = find_predicate(f.predicate);
        for (size_t i = 0; i < spec->args.size(); ++i) {
            if (auto k = detail::decl_kind(spec->args[i]))
                touch(f.args[i], *k, f, true);
            else if (auto u = detail::use_kind(spec->args[i]))
                touch(f.args[i], *u, f, false);
        }
    }
    return table;
}

// Names declared with a given kind; conflicted names count for every
// kind they were declared under.
inline bool declared_as(const SymbolTable& table, const std::string& name, SymbolKind kind) {
    auto it = table.find(name);
    if (it == table.end()) return false;
    if (it->second.declaring.empty()) return false;
    if (it->second.kind == kind) return true;
    if (it->second.kind != SymbolKind::conflicted) return false;
    for (const auto& f : it->second.declaring) {
        const PredicateSpec* spec = find_predicate(f.predicate);
        for (size_t i = 0; i < spec->args.size(); ++i)
            if (f.args[i] == name && detail::decl_kind(spec->args[i]) == kind) return true;
    }
    return false;
}

}  // namespace sdlaudit
