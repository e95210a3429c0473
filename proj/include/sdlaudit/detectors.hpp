// detectors.hpp - the eleven risk detectors over base + derived facts
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdlaudit/engine.hpp"

namespace sdlaudit {

enum class FindingClass { unguarded_sink, taint_flow, structural_anomaly };

inline std::string_view to_string(FindingClass c) {
    switch (c) {
        case FindingClass::unguarded_sink: return "unguarded_sink";
        case FindingClass::taint_flow: return "taint_flow";
        case FindingClass::structural_anomaly: return "structural_anomaly";
    }
    return "?";
}

enum class Severity { critical, warning };

inline std::string_view to_string(Severity s) {
    return s == Severity::critical ? "critical" : "warning";
}

struct DetectorInfo {
    std::string_view name;
    FindingClass cls;
    Severity severity;
};

// One unguarded-sink detector, four taint-flow, six structural.
inline constexpr std::array<DetectorInfo, 11> detector_table = {{
    {"MHG", FindingClass::unguarded_sink, Severity::critical},
    {"UCI", FindingClass::taint_flow, Severity::critical},
    {"SLRO", FindingClass::taint_flow, Severity::critical},
    {"IEC", FindingClass::taint_flow, Severity::critical},
    {"DEP", FindingClass::taint_flow, Severity::critical},
    {"SC", FindingClass::structural_anomaly, Severity::warning},
    {"UDS", FindingClass::structural_anomaly, Severity::warning},
    {"BCC", FindingClass::structural_anomaly, Severity::warning},
    {"OBF", FindingClass::structural_anomaly, Severity::warning},
    {"HCC", FindingClass::structural_anomaly, Severity::warning},
    {"DMP", FindingClass::structural_anomaly, Severity::warning},
}};

namespace detail {
inline constexpr size_t count_class(FindingClass c) {
    size_t n = 0;
    for (const auto& d : detector_table)
        if (d.cls == c) ++n;
    return n;
}
}  // namespace detail

static_assert(detector_table.size() == 11, "eleven detectors");
static_assert(detail::count_class(FindingClass::unguarded_sink) == 1, "one unguarded-sink detector");
static_assert(detail::count_class(FindingClass::taint_flow) == 4, "four taint-flow detectors");
static_assert(detail::count_class(FindingClass::structural_anomaly) == 6, "six structural detectors");

inline const DetectorInfo& detector_info(std::string_view name) {
    for (const auto& d : detector_table)
        if (d.name == name) return d;
    throw std::invalid_argument("unknown detector: " + std::string(name));
}

// Maps each documentation claim to the effects it forbids.
inline const std::set<std::string>& prohibits(const std::string& claim) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"read_only", {"fs_write", "net_write", "chain_write"}},
        {"local_only", {"net_read", "net_write"}},
        {"no_network", {"net_read", "net_write"}},
        {"no_exec", {"proc_exec", "code_eval"}},
    };
    return table.at(claim);
}

struct Finding {
    std::string detector;
    std::vector<std::pair<std::string, std::string>> bindings;  // fixed order per detector
    std::vector<WitnessPath> witnesses;  // one per derived-relation premise
    FindingClass cls;
    Severity severity;

    std::string serialized_bindings() const {
        std::string out;
        for (const auto& [k, v] : bindings) {
            if (!out.empty()) out += ',';
            out += k + "=" + v;
        }
        return out;
    }
};

namespace detail {

class FindingSink {
public:
    explicit FindingSink(const DerivedRelations& dr) : dr_(dr) {}

    // dedup on (detector, bindings); the first emission wins, so the
    // caller's sorted iteration picks the witness deterministically
    void emit(std::string detector, std::vector<std::pair<std::string, std::string>> bindings,
              std::vector<Tuple> derived_premises = {}) {
        std::string key = detector;
        for (const auto& [k, v] : bindings) key += "|" + k + "=" + v;
        if (!seen_.insert(key).second) return;
        Finding f;
        f.detector = std::move(detector);
        f.bindings = std::move(bindings);
        const DetectorInfo& info = detector_info(f.detector);
        f.cls = info.cls;
        f.severity = info.severity;
        for (const auto& t : derived_premises) f.witnesses.push_back(explain(dr_, t));
        findings.push_back(std::move(f));
    }

    std::vector<Finding> findings;

private:
    const DerivedRelations& dr_;
    std::set<std::string> seen_;
};

}  // namespace detail

// Runs every detector rule; findings are deduplicated on
// (detector, bindings) and sorted by (detector, serialized bindings).
inline std::vector<Finding> run_detectors(const FactBase& fb, const DerivedRelations& dr) {
    detail::FindingSink sink(dr);

    struct CallRow {
        std::string id, action, effect, skill;
    };
    std::vector<CallRow> calls;
    std::map<std::string, std::string> action_skill;
    std::map<std::string, std::vector<std::string>> inputs_by_call, targets_by_call;
    std::map<std::string, std::vector<std::string>> claims_by_skill;
    std::set<std::string> trusted, sensitive, unresolved, obfuscated, encoded;
    std::set<std::pair<std::string, std::string>> gates, allowed;
    std::map<std::string, std::string> secret_of_var;  // first declaration wins

    for (const auto& f : fb.facts()) {
        if (f.predicate == "action") action_skill.emplace(f.args[0], f.args[1]);
        else if (f.predicate == "call_input") inputs_by_call[f.args[0]].push_back(f.args[2]);
        else if (f.predicate == "call_target") targets_by_call[f.args[0]].push_back(f.args[1]);
        else if (f.predicate == "call_target_trusted") trusted.insert(f.args[0]);
        else if (f.predicate == "call_target_sensitive") sensitive.insert(f.args[0]);
        else if (f.predicate == "call_target_unresolved") unresolved.insert(f.args[0]);
        else if (f.predicate == "call_body_obfuscated") obfuscated.insert(f.args[0]);
        else if (f.predicate == "call_body_encoded_binary") encoded.insert(f.args[0]);
        else if (f.predicate == "barrier_gate") gates.insert({f.args[0], f.args[1]});
        else if (f.predicate == "secret_allowed") allowed.insert({f.args[0], f.args[1]});
        else if (f.predicate == "doc_claim") claims_by_skill[f.args[0]].push_back(f.args[1]);
        else if (f.predicate == "secret_var") secret_of_var.emplace(f.args[0], f.args[1]);
    }
    for (const auto& f : fb.facts())
        if (f.predicate == "call") {
            auto it = action_skill.find(f.args[1]);
            calls.push_back({f.args[0], f.args[1], f.args[2],
                             it == action_skill.end() ? std::string() : it->second});
        }

    static const std::vector<std::string> no_inputs;
    auto inputs_of = [&](const std::string& call) -> const std::vector<std::string>& {
        auto it = inputs_by_call.find(call);
        return it == inputs_by_call.end() ? no_inputs : it->second;
    };
    auto human_gate = [&](const std::string& action) {
        return gates.count({action, "human_approval"}) > 0;
    };

    for (const auto& c : calls) {
        bool high = high_privilege(c.effect);
        bool net = network_effect(c.effect);
        bool is_trusted = trusted.count(c.id) > 0;
        bool gated = human_gate(c.action);

        // MHG: high-privilege call without an interactive approval gate
        if (high && !gated)
            sink.emit("MHG", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}});

        // UCI: tainted input reaches a high-privilege call, no human gate
        if (high && !gated)
            for (const auto& v : inputs_of(c.id))
                if (dr.var_tainted.count(v)) {
                    sink.emit("UCI", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}},
                              {Tuple{"var_tainted", {v}}});
                    break;
                }

        // SLRO clause 1: a secret enters an action outside its allowlist
        for (const auto& v : inputs_of(c.id)) {
            auto sv = secret_of_var.find(v);
            if (sv == secret_of_var.end()) continue;
            if (!allowed.count({sv->second, c.action}))
                sink.emit("SLRO", {{"skill", c.skill},
                                   {"action", c.action},
                                   {"call", c.id},
                                   {"secret", sv->second}});
        }
        // SLRO clause 2: secret and tainted variable co-enter an
        // untrusted call
        if (!is_trusted) {
            const auto& vars = inputs_of(c.id);
            for (const auto& sv : vars) {
                auto sec = secret_of_var.find(sv);
                if (sec == secret_of_var.end()) continue;
                for (const auto& tv : vars) {
                    if (tv == sv || !dr.var_tainted.count(tv)) continue;
                    sink.emit("SLRO",
                              {{"skill", c.skill},
                               {"action", c.action},
                               {"call", c.id},
                               {"secret", sec->second}},
                              {Tuple{"var_tainted", {tv}}});
                }
            }
        }

        // IEC: a secret-carrying variable feeds an untrusted network
        // call with neither a human gate nor an allowlist gate
        if (net && !is_trusted && !gated && !gates.count({c.action, "allowlist"}))
            for (const auto& v : inputs_of(c.id))
                if (dr.var_secret.count(v)) {
                    sink.emit("IEC", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}},
                              {Tuple{"var_secret", {v}}});
                    break;
                }

        // DEP: tainted data reaches an unconditional execution sink
        if (c.effect == "proc_exec" && dr.call_unconditional.count(c.id))
            for (const auto& v : inputs_of(c.id))
                if (dr.var_tainted.count(v)) {
                    sink.emit("DEP", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}},
                              {Tuple{"var_tainted", {v}}, Tuple{"call_unconditional", {c.id}}});
                    break;
                }

        // UDS: target annotated unresolvable and no target recorded
        if (unresolved.count(c.id) && !targets_by_call.count(c.id))
            sink.emit("UDS", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}});

        // BCC: an effect some documentation claim forbids, off-platform
        if (!is_trusted) {
            auto cit = claims_by_skill.find(c.skill);
            if (cit != claims_by_skill.end())
                for (const auto& claim : cit->second)
                    if (prohibits(claim).count(c.effect))
                        sink.emit("BCC", {{"skill", c.skill},
                                          {"action", c.action},
                                          {"call", c.id},
                                          {"effect", c.effect}});
        }

        // OBF: obfuscated or binary-embedding call body
        if (obfuscated.count(c.id) || encoded.count(c.id))
            sink.emit("OBF", {{"skill", c.skill}, {"call", c.id}});

        // HCC: hardcoded network target that does not resolve
        if (net && unresolved.count(c.id)) {
            auto tit = targets_by_call.find(c.id);
            if (tit != targets_by_call.end())
                for (const auto& target : tit->second)
                    sink.emit("HCC", {{"skill", c.skill}, {"call", c.id}, {"target", target}});
        }

        // DMP: dangerous or hidden capability behind a conditional edge
        bool dangerous = high || obfuscated.count(c.id) || encoded.count(c.id);
        if (dangerous && dr.call_reachable.count(c.id) && !dr.call_unconditional.count(c.id))
            sink.emit("DMP", {{"skill", c.skill}, {"action", c.action}, {"call", c.id}},
                      {Tuple{"call_reachable", {c.id}}});
    }

    // SC: sensitive local read plus untrusted network egress anywhere
    // in the same skill; no data-flow premise required
    for (const auto& cr : calls) {
        if (cr.effect != "fs_read" || !sensitive.count(cr.id)) continue;
        for (const auto& cn : calls) {
            if (!network_effect(cn.effect) || trusted.count(cn.id)) continue;
            if (cr.skill != cn.skill) continue;
            sink.emit("SC", {{"skill", cr.skill}, {"read_call", cr.id}, {"net_call", cn.id}});
        }
    }

    auto& findings = sink.findings;
    std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        if (a.detector != b.detector) return a.detector < b.detector;
        return a.serialized_bindings() < b.serialized_bindings();
    });
    return findings;
}

}  // namespace sdlaudit
