// verbalizer.hpp - canonical English projection of a fact base and the
// coverage distance that scores a candidate against the source units.
//
// Rendering is strictly additive: every fact contributes at least one
// phrase and no phrase depends on the absence of another fact, so the
// token set grows monotonically as facts are added. That property is
// what keeps the distance non-increasing under fact extension.
#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdlaudit/fact.hpp"
#include "sdlaudit/inliner.hpp"
#include "sdlaudit/tokenize.hpp"

namespace sdlaudit {

// Bump when the sentence templates change; distance values are only
// comparable within one template version.
inline constexpr std::string_view template_version = "v1";

struct Verbalization {
    std::string text;
    std::vector<std::string> tokens;     // normalized multiset
    std::set<std::string> token_set;
};

namespace detail {

inline std::string effect_phrase(const std::string& effect) {
    if (effect == "net_read") return "net read and fetches data over the network";
    if (effect == "net_write") return "net write and sends data over the network";
    if (effect == "proc_exec") return "proc exec and executes a system process";
    if (effect == "code_eval") return "code eval and evaluates dynamic code";
    if (effect == "chain_write") return "chain write and signs and submits a blockchain transaction";
    if (effect == "crypto_sign") return "crypto sign and signs data with a cryptographic key";
    if (effect == "fs_read") return "fs read and reads from the local filesystem";
    if (effect == "fs_write") return "fs write and writes to the local filesystem";
    return effect;
}

inline std::string spaced(std::string_view enum_name) {
    std::string out(enum_name);
    for (char& c : out)
        if (c == '_') c = ' ';
    return out;
}

inline std::string gate_phrase(const std::string& gate) {
    if (gate == "human_approval") return "human approval";
    if (gate == "confirmation_prompt") return "a confirmation prompt";
    if (gate == "allowlist") return "an allowlist check";
    if (gate == "budget_limit") return "a budget limit";
    return spaced(gate);
}

}  // namespace detail

// Deterministic sentence-per-fact rendering, grouped by action in
// sorted order. Total over any schema-valid base: facts that reference
// undeclared structure still render through the same templates.
inline Verbalization verbalize(const FactBase& fb) {
    std::vector<std::string> sentences;
    std::set<const Fact*> rendered;
    auto mark = [&](const Fact& f) { rendered.insert(&f); };

    auto facts_of = [&](std::string_view pred) { return fb.with_predicate(pred); };

    // skill preamble, claims, secrets
    for (const Fact* f : facts_of("skill")) {
        sentences.push_back("Skill " + f->args[0] + ".");
        mark(*f);
    }
    for (const Fact* f : facts_of("doc_claim")) {
        sentences.push_back("The skill claims " + detail::spaced(f->args[1]) + " behavior.");
        mark(*f);
    }
    for (const Fact* f : facts_of("secret")) {
        sentences.push_back("The skill declares a secret " + f->args[0] + ".");
        mark(*f);
    }

    // per-action groups
    std::map<std::string, const Fact*> actions;
    for (const Fact* f : facts_of("action")) actions[f->args[0]] = f;
    std::map<std::string, std::vector<const Fact*>> calls_by_action;
    for (const Fact* f : facts_of("call")) calls_by_action[f->args[1]].push_back(f);

    auto render_call = [&](const Fact& call) {
        const std::string& c = call.args[0];
        std::string sentence = "Call " + c + " performs " + detail::effect_phrase(call.args[2]);
        for (const Fact* t : facts_of("call_target"))
            if (t->args[0] == c) {
                sentence += ", against " + t->args[1];
                mark(*t);
            }
        for (const Fact* in : facts_of("call_input"))
            if (in->args[0] == c) {
                sentence += ", reading " + in->args[2];
                mark(*in);
            }
        for (const Fact* out : facts_of("call_output"))
            if (out->args[0] == c) {
                sentence += ", producing " + out->args[2];
                mark(*out);
            }
        sentence += ".";
        sentences.push_back(sentence);
        mark(call);
        for (const Fact* t : facts_of("call_target_trusted"))
            if (t->args[0] == c) {
                sentences.push_back("The target of call " + c + " is trusted.");
                mark(*t);
            }
        for (const Fact* t : facts_of("call_target_sensitive"))
            if (t->args[0] == c) {
                sentences.push_back("The target of call " + c + " is a sensitive credential store.");
                mark(*t);
            }
        for (const Fact* t : facts_of("call_target_unresolved"))
            if (t->args[0] == c) {
                sentences.push_back("The target of call " + c + " is unresolved.");
                mark(*t);
            }
        for (const Fact* t : facts_of("call_body_obfuscated"))
            if (t->args[0] == c) {
                sentences.push_back("The body of call " + c + " is obfuscated.");
                mark(*t);
            }
        for (const Fact* t : facts_of("call_body_encoded_binary"))
            if (t->args[0] == c) {
                sentences.push_back("The body of call " + c + " embeds an encoded binary payload.");
                mark(*t);
            }
    };

    for (const auto& [name, action] : actions) {
        sentences.push_back("Action " + name + ".");
        mark(*action);
        for (const Fact* f : facts_of("action_trigger"))
            if (f->args[0] == name) {
                sentences.push_back("Action " + name + " is triggered by " +
                                    detail::spaced(f->args[1]) + ".");
                mark(*f);
            }
        for (const Fact* f : facts_of("action_param"))
            if (f->args[0] == name) {
                sentences.push_back("Action " + name + " takes parameter " + f->args[1] +
                                    " as " + f->args[2] + ".");
                mark(*f);
            }
        for (const Fact* f : facts_of("barrier_gate"))
            if (f->args[0] == name) {
                std::string phrase = detail::gate_phrase(f->args[1]);
                phrase[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(phrase[0])));
                sentences.push_back(phrase + " is required for action " + name + ".");
                mark(*f);
            }
        for (const Fact* call : calls_by_action[name]) render_call(*call);
    }

    for (const Fact* f : facts_of("call_next")) {
        sentences.push_back("Call " + f->args[0] + " is followed by call " + f->args[1] + ".");
        mark(*f);
    }
    for (const Fact* f : facts_of("call_conditional")) {
        sentences.push_back("Call " + f->args[1] + " runs conditionally after call " +
                            f->args[0] + ".");
        mark(*f);
    }
    for (const Fact* f : facts_of("secret_var")) {
        sentences.push_back("Variable " + f->args[0] + " carries the secret " + f->args[1] + ".");
        mark(*f);
    }
    for (const Fact* f : facts_of("secret_allowed")) {
        sentences.push_back("The secret " + f->args[0] + " is allowed in action " + f->args[1] +
                            ".");
        mark(*f);
    }
    for (const Fact* f : facts_of("barrier_sanitize")) {
        sentences.push_back("Variable " + f->args[0] + " is sanitized at " + f->args[1] + ".");
        mark(*f);
    }

    // leftovers: facts attached to undeclared actions/calls
    for (const auto& f : fb.facts()) {
        if (rendered.count(&f)) continue;
        if (f.predicate == "call") {
            render_call(f);
        } else if (f.predicate == "action_trigger") {
            sentences.push_back("Action " + f.args[0] + " is triggered by " +
                                detail::spaced(f.args[1]) + ".");
        } else if (f.predicate == "action_param") {
            sentences.push_back("Action " + f.args[0] + " takes parameter " + f.args[1] +
                                " as " + f.args[2] + ".");
        } else if (f.predicate == "barrier_gate") {
            sentences.push_back(detail::gate_phrase(f.args[1]) + " is required for action " +
                                f.args[0] + ".");
        } else if (f.predicate == "call_input") {
            // same clause vocabulary as the grouped rendering so that
            // declaring the call later never removes a token
            sentences.push_back("Call " + f.args[0] + ", reading " + f.args[2] + ".");
        } else if (f.predicate == "call_output") {
            sentences.push_back("Call " + f.args[0] + ", producing " + f.args[2] + ".");
        } else if (f.predicate == "call_target") {
            sentences.push_back("Call " + f.args[0] + ", against " + f.args[1] + ".");
        } else if (f.predicate == "call_target_trusted") {
            sentences.push_back("The target of call " + f.args[0] + " is trusted.");
        } else if (f.predicate == "call_target_sensitive") {
            sentences.push_back("The target of call " + f.args[0] +
                                " is a sensitive credential store.");
        } else if (f.predicate == "call_target_unresolved") {
            sentences.push_back("The target of call " + f.args[0] + " is unresolved.");
        } else if (f.predicate == "call_body_obfuscated") {
            sentences.push_back("The body of call " + f.args[0] + " is obfuscated.");
        } else if (f.predicate == "call_body_encoded_binary") {
            sentences.push_back("The body of call " + f.args[0] +
                                " embeds an encoded binary payload.");
        }
    }

    Verbalization v;
    for (size_t i = 0; i < sentences.size(); ++i) {
        v.text += sentences[i];
        v.text += '\n';
    }
    v.tokens = normalize_tokens(v.text);
    v.token_set = std::set<std::string>(v.tokens.begin(), v.tokens.end());
    return v;
}

struct DistanceReport {
    double d = 0.0;
    std::vector<std::string> covered;    // unit ids
    std::vector<std::string> uncovered;  // unit ids
    std::map<std::string, double> per_unit_overlap;
};

// A unit is covered when at least theta of its distinct content tokens
// occur in the verbalization. Headings are measured but excluded from
// the covered/uncovered lists (and hence from d); units with no
// content tokens are vacuously covered.
inline DistanceReport distance(const std::vector<SemanticUnit>& units, const Verbalization& v,
                               double theta = 0.6) {
    DistanceReport report;
    for (const auto& u : units) {
        std::set<std::string> distinct(u.tokens.begin(), u.tokens.end());
        double overlap = 1.0;
        if (!distinct.empty()) {
            size_t hit = 0;
            for (const auto& t : distinct)
                if (v.token_set.count(t)) ++hit;
            overlap = static_cast<double>(hit) / static_cast<double>(distinct.size());
        }
        report.per_unit_overlap[u.id] = overlap;
        if (u.kind == UnitKind::heading) continue;
        if (overlap >= theta)
            report.covered.push_back(u.id);
        else
            report.uncovered.push_back(u.id);
    }
    size_t denom = report.covered.size() + report.uncovered.size();
    report.d = denom == 0 ? 0.0
                          : 1.0 - static_cast<double>(report.covered.size()) /
                                      static_cast<double>(denom);
    return report;
}

}  // namespace sdlaudit
