// atoms.hpp - closed enumeration vocabularies of the SDL schema
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace sdlaudit {

enum class Effect {
    net_read,
    net_write,
    proc_exec,
    code_eval,
    chain_write,
    crypto_sign,
    fs_read,
    fs_write,
};

enum class Trigger {
    llm,
    external,
    on_import,
    on_install,
};

enum class Gate {
    human_approval,
    confirmation_prompt,
    allowlist,
    budget_limit,
};

enum class Claim {
    read_only,
    local_only,
    no_network,
    no_exec,
};

inline constexpr std::array<std::string_view, 8> effect_names = {
    "net_read", "net_write", "proc_exec", "code_eval",
    "chain_write", "crypto_sign", "fs_read", "fs_write",
};

inline constexpr std::array<std::string_view, 4> trigger_names = {
    "llm", "external", "on_import", "on_install",
};

inline constexpr std::array<std::string_view, 4> gate_names = {
    "human_approval", "confirmation_prompt", "allowlist", "budget_limit",
};

inline constexpr std::array<std::string_view, 4> claim_names = {
    "read_only", "local_only", "no_network", "no_exec",
};

inline std::string_view to_string(Effect e) { return effect_names[static_cast<size_t>(e)]; }
inline std::string_view to_string(Trigger t) { return trigger_names[static_cast<size_t>(t)]; }
inline std::string_view to_string(Gate g) { return gate_names[static_cast<size_t>(g)]; }
inline std::string_view to_string(Claim c) { return claim_names[static_cast<size_t>(c)]; }

template <typename E, size_t N>
inline std::optional<E> enum_from(const std::array<std::string_view, N>& names, std::string_view s) {
    for (size_t i = 0; i < N; ++i)
        if (names[i] == s) return static_cast<E>(i);
    return std::nullopt;
}

inline std::optional<Effect> effect_from(std::string_view s) { return enum_from<Effect>(effect_names, s); }
inline std::optional<Trigger> trigger_from(std::string_view s) { return enum_from<Trigger>(trigger_names, s); }
inline std::optional<Gate> gate_from(std::string_view s) { return enum_from<Gate>(gate_names, s); }
inline std::optional<Claim> claim_from(std::string_view s) { return enum_from<Claim>(claim_names, s); }

// Irreversible operations an attacker wants to reach.
inline bool high_privilege(Effect e) {
    return e == Effect::chain_write || e == Effect::proc_exec ||
           e == Effect::code_eval || e == Effect::crypto_sign;
}

inline bool high_privilege(std::string_view effect) {
    auto e = effect_from(effect);
    return e && high_privilege(*e);
}

inline bool network_effect(std::string_view effect) {
    return effect == "net_read" || effect == "net_write";
}

// Triggers that fire without the user in the loop; their action
// parameters are attacker-controlled.
inline bool untrusted_trigger(std::string_view trigger) {
    return trigger == "external" || trigger == "on_import" || trigger == "on_install";
}

}  // namespace sdlaudit
