// engine.hpp - stratified semi-naive evaluation of the five derived
// relations, with one stored justification per tuple for witness
// reconstruction.
//
// Rules, in stratum order (negation only ever looks at base facts):
//
//   data_flows
//     R1  action_param(a,_,ap), call(c,a,_), call_input(c,_,ci)      -> (ap,ci)
//     R2  call_input(c,_,i), call_output(c,_,o)                      -> (i,o)
//     R3  call_output(c1,_,o), call_next(c1,c2), call_input(c2,_,i)  -> (o,i)
//     R5  call_output(c1,_,o), call(c1,a1,_), action(a1,s),
//         call(c2,a2,_), action(a2,s), a1 != a2, call_input(c2,_,i)  -> (o,i)
//     R4  data_flows(a,b), data_flows(b,c)                           -> (a,c)
//
//   var_tainted
//     T1  action_param(a,_,v), action_trigger(a,t), t untrusted      -> v
//     T2  call(c,_,e), e in {net_read,net_write},
//         !call_target_trusted(c), call_output(c,_,o)                -> o
//     T3  var_tainted(s), data_flows(s,d), !barrier_sanitize(d,_)    -> d
//
//   var_secret
//     S1  secret(n), secret_var(v,n)                                 -> v
//     S2  var_secret(s), data_flows(s,d)                             -> d
//
//   call_reachable / call_unconditional
//     CR1/CU1  call(c,a,_), !call_next(_,c), !call_conditional(_,c)  -> c
//     CR2      call_reachable(p),  call_next(p,c)                    -> c
//     CR3      call_reachable(p),  call_conditional(p,c)             -> c
//     CU2      call_unconditional(p), call_next(p,c)                 -> c
//
// R5 is the cross-action bridge (on by default, DeriveOptions can turn
// it off). Sanitization blocks taint only at the destination variable
// itself; sources and pass-through hops are unaffected.
//
// Internally atoms are interned to dense ids assigned in sorted order,
// so integer comparisons on justification candidates coincide with the
// lexicographic tuple order the provenance contract promises.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdlaudit/fact.hpp"
#include "sdlaudit/parse.hpp"

namespace sdlaudit {

// A base fact or a derived tuple; the name disambiguates.
struct Tuple {
    std::string name;
    std::vector<std::string> args;
    auto operator<=>(const Tuple&) const = default;
};

inline Tuple to_tuple(const Fact& f) { return Tuple{f.predicate, f.args}; }

inline bool derived_relation(std::string_view name) {
    return name == "data_flows" || name == "var_tainted" || name == "var_secret" ||
           name == "call_reachable" || name == "call_unconditional";
}

inline std::string compact(const Tuple& t) {
    std::string out = t.name;
    out += '(';
    for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        out += t.args[i];
    }
    out += ')';
    return out;
}

struct Justification {
    std::string rule;
    std::vector<Tuple> premises;  // positive premises only
};

struct DeriveOptions {
    bool cross_action = true;
};

struct DerivedRelations {
    std::set<std::pair<std::string, std::string>> data_flows;
    std::set<std::string> var_tainted;
    std::set<std::string> var_secret;
    std::set<std::string> call_reachable;
    std::set<std::string> call_unconditional;
    std::map<Tuple, Justification> provenance;
};

struct WitnessStep {
    std::string rule;
    std::vector<Tuple> premises;
    Tuple conclusion;
};

struct WitnessPath {
    std::vector<WitnessStep> steps;  // topological: premises precede use
    Tuple conclusion;
};

struct NotDerivedError : std::runtime_error {
    explicit NotDerivedError(const Tuple& t)
        : std::runtime_error("tuple not derived: " + compact(t)) {}
};

namespace engine_detail {

// Derived relation tags, ordered by relation name so that tag order
// equals name order in premise comparisons.
enum Rel : int8_t {
    rel_call_reachable = 0,
    rel_call_unconditional = 1,
    rel_data_flows = 2,
    rel_var_secret = 3,
    rel_var_tainted = 4,
};

inline const char* rel_name(Rel r) {
    switch (r) {
        case rel_call_reachable: return "call_reachable";
        case rel_call_unconditional: return "call_unconditional";
        case rel_data_flows: return "data_flows";
        case rel_var_secret: return "var_secret";
        case rel_var_tainted: return "var_tainted";
    }
    return "?";
}

// One positive premise: either a base fact (by index into the sorted
// fact vector, which is already lexicographically ordered) or a derived
// tuple (tag + interned args). base_rank carries the fact's sort
// position among ALL premise orderings; comparisons must interleave
// base facts and derived tuples by (name, args), so we precompute a
// mixed key.
struct Premise {
    bool derived = false;
    int32_t fact_index = -1;  // base
    Rel rel = rel_data_flows; // derived
    int32_t a = -1, b = -1;   // derived args (b = -1 for unary)
};

struct CompactJust {
    uint8_t rule;  // index into rule_names
    std::vector<Premise> premises;
};

inline const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names = {"R1", "R2", "R3", "R4", "R5", "T1", "T2",
                                                   "T3", "S1", "S2", "CR1", "CR2", "CR3",
                                                   "CU1", "CU2"};
    return names;
}

enum Rule : uint8_t {
    rule_R1, rule_R2, rule_R3, rule_R4, rule_R5, rule_T1, rule_T2, rule_T3,
    rule_S1, rule_S2, rule_CR1, rule_CR2, rule_CR3, rule_CU1, rule_CU2,
};

}  // namespace engine_detail

inline DerivedRelations derive(const FactBase& fb, DeriveOptions opts = {}) {
    using namespace engine_detail;
    const auto& facts = fb.facts();

    // ---- intern atoms in sorted order so id order == string order ----
    std::vector<std::string> atom_list;
    atom_list.reserve(facts.size() * 2);
    for (const auto& f : facts)
        for (const auto& a : f.args) atom_list.push_back(a);
    std::sort(atom_list.begin(), atom_list.end());
    atom_list.erase(std::unique(atom_list.begin(), atom_list.end()), atom_list.end());
    std::unordered_map<std::string, int32_t> atom_id;
    atom_id.reserve(atom_list.size() * 2);
    for (size_t i = 0; i < atom_list.size(); ++i) atom_id.emplace(atom_list[i], (int32_t)i);
    auto id_of = [&](const std::string& s) { return atom_id.at(s); };
    const int n_atoms = (int)atom_list.size();

    // ---- premise comparison mirroring Tuple's (name, args) order -----
    // base facts are pre-sorted in the fact vector, so fact_index order
    // equals (predicate, args) order; mixing base and derived premises
    // compares their names first.
    auto premise_name = [&](const Premise& p) -> const std::string& {
        static const std::string rel_strings[5] = {"call_reachable", "call_unconditional",
                                                   "data_flows", "var_secret", "var_tainted"};
        return p.derived ? rel_strings[p.rel] : facts[p.fact_index].predicate;
    };
    auto premise_less = [&](const Premise& x, const Premise& y) {
        if (!x.derived && !y.derived) return x.fact_index < y.fact_index;
        const std::string& nx = premise_name(x);
        const std::string& ny = premise_name(y);
        if (nx != ny) return nx < ny;
        if (x.derived && y.derived) {
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        }
        // same name implies same kind; unreachable for mixed kinds
        return false;
    };
    auto premises_less = [&](const std::vector<Premise>& x, const std::vector<Premise>& y) {
        size_t n = std::min(x.size(), y.size());
        for (size_t i = 0; i < n; ++i) {
            if (premise_less(x[i], y[i])) return true;
            if (premise_less(y[i], x[i])) return false;
        }
        return x.size() < y.size();
    };

    // ---- indexes over the base facts ---------------------------------
    struct VarRef {
        int32_t fact;  // fact index
        int32_t var;   // interned variable
    };
    struct CallFact {
        int32_t fact;    // fact index
        int32_t action;  // interned action id
    };
    struct ActionFact {
        int32_t fact;
        int32_t skill;
    };
    std::unordered_map<int32_t, std::vector<VarRef>> inputs_by_call, outputs_by_call;
    std::unordered_map<int32_t, std::vector<int32_t>> calls_by_action;   // call fact indexes
    std::unordered_map<int32_t, std::vector<CallFact>> call_facts_by_id;
    std::unordered_map<int32_t, std::vector<ActionFact>> action_facts_by_id;
    std::unordered_map<int32_t, std::vector<VarRef>> params_by_action;
    std::unordered_map<int32_t, std::vector<int32_t>> triggers_by_action;  // fact indexes
    std::unordered_map<int32_t, std::vector<std::pair<int32_t, int32_t>>> next_out, cond_out;
    std::unordered_set<int32_t> has_incoming_next, has_incoming_cond;
    std::unordered_set<int32_t> trusted_calls, sanitized_vars, declared_secrets;

    for (int32_t i = 0; i < (int32_t)facts.size(); ++i) {
        const Fact& f = facts[i];
        if (f.predicate == "call_input")
            inputs_by_call[id_of(f.args[0])].push_back({i, id_of(f.args[2])});
        else if (f.predicate == "call_output")
            outputs_by_call[id_of(f.args[0])].push_back({i, id_of(f.args[2])});
        else if (f.predicate == "call") {
            int32_t c = id_of(f.args[0]), a = id_of(f.args[1]);
            calls_by_action[a].push_back(i);
            call_facts_by_id[c].push_back({i, a});
        } else if (f.predicate == "action") {
            action_facts_by_id[id_of(f.args[0])].push_back({i, id_of(f.args[1])});
        } else if (f.predicate == "action_param")
            params_by_action[id_of(f.args[0])].push_back({i, id_of(f.args[2])});
        else if (f.predicate == "action_trigger")
            triggers_by_action[id_of(f.args[0])].push_back(i);
        else if (f.predicate == "call_next") {
            next_out[id_of(f.args[0])].push_back({id_of(f.args[1]), i});
            has_incoming_next.insert(id_of(f.args[1]));
        } else if (f.predicate == "call_conditional") {
            cond_out[id_of(f.args[0])].push_back({id_of(f.args[1]), i});
            has_incoming_cond.insert(id_of(f.args[1]));
        } else if (f.predicate == "call_target_trusted")
            trusted_calls.insert(id_of(f.args[0]));
        else if (f.predicate == "barrier_sanitize")
            sanitized_vars.insert(id_of(f.args[0]));
        else if (f.predicate == "secret")
            declared_secrets.insert(id_of(f.args[0]));
    }

    auto base = [](int32_t fact_index) {
        Premise p;
        p.derived = false;
        p.fact_index = fact_index;
        return p;
    };
    auto dtuple = [](Rel rel, int32_t a, int32_t b = -1) {
        Premise p;
        p.derived = true;
        p.rel = rel;
        p.a = a;
        p.b = b;
        return p;
    };

    // ---- data_flows ---------------------------------------------------
    auto key_of = [n_atoms](int32_t a, int32_t b) { return (int64_t)a * n_atoms + b; };
    std::unordered_map<int64_t, CompactJust> df_just;
    std::vector<std::unordered_set<int32_t>> fwd(n_atoms), back(n_atoms);
    std::vector<std::pair<int32_t, int32_t>> df_delta;

    {
        std::unordered_map<int64_t, CompactJust> pending;
        auto offer = [&](int32_t a, int32_t b, CompactJust just) {
            auto [it, inserted] = pending.try_emplace(key_of(a, b), std::move(just));
            if (!inserted && premises_less(just.premises, it->second.premises))
                it->second = std::move(just);
        };
        // R1
        for (const auto& [action, params] : params_by_action) {
            auto cit = calls_by_action.find(action);
            if (cit == calls_by_action.end()) continue;
            for (const auto& p : params)
                for (int32_t call_fact : cit->second) {
                    auto iit = inputs_by_call.find(id_of(facts[call_fact].args[0]));
                    if (iit == inputs_by_call.end()) continue;
                    for (const auto& in : iit->second)
                        offer(p.var, in.var,
                              {rule_R1, {base(p.fact), base(call_fact), base(in.fact)}});
                }
        }
        // R2
        for (const auto& [call, ins] : inputs_by_call) {
            auto oit = outputs_by_call.find(call);
            if (oit == outputs_by_call.end()) continue;
            for (const auto& in : ins)
                for (const auto& out : oit->second)
                    offer(in.var, out.var, {rule_R2, {base(in.fact), base(out.fact)}});
        }
        // R3
        for (const auto& [call, outs] : outputs_by_call) {
            auto nit = next_out.find(call);
            if (nit == next_out.end()) continue;
            for (const auto& out : outs)
                for (const auto& [succ, edge] : nit->second) {
                    auto iit = inputs_by_call.find(succ);
                    if (iit == inputs_by_call.end()) continue;
                    for (const auto& in : iit->second)
                        offer(out.var, in.var, {rule_R3, {base(out.fact), base(edge), base(in.fact)}});
                }
        }
        // R5: every (call, action) fact pairing participates, so bases
        // with duplicate declarations still match the rule body exactly
        if (opts.cross_action) {
            for (const auto& [call, outs] : outputs_by_call) {
                auto cf1s = call_facts_by_id.find(call);
                if (cf1s == call_facts_by_id.end()) continue;
                for (const auto& cf1 : cf1s->second) {
                    auto af1s = action_facts_by_id.find(cf1.action);
                    if (af1s == action_facts_by_id.end()) continue;
                    for (const auto& af1 : af1s->second) {
                        for (const auto& [call2, ins] : inputs_by_call) {
                            auto cf2s = call_facts_by_id.find(call2);
                            if (cf2s == call_facts_by_id.end()) continue;
                            for (const auto& cf2 : cf2s->second) {
                                if (cf2.action == cf1.action) continue;
                                auto af2s = action_facts_by_id.find(cf2.action);
                                if (af2s == action_facts_by_id.end()) continue;
                                for (const auto& af2 : af2s->second) {
                                    if (af2.skill != af1.skill) continue;
                                    for (const auto& out : outs)
                                        for (const auto& in : ins)
                                            offer(out.var, in.var,
                                                  {rule_R5,
                                                   {base(out.fact), base(cf1.fact),
                                                    base(af1.fact), base(cf2.fact),
                                                    base(af2.fact), base(in.fact)}});
                                }
                            }
                        }
                    }
                }
            }
        }
        for (auto& [key, just] : pending) {
            int32_t a = (int32_t)(key / n_atoms), b = (int32_t)(key % n_atoms);
            fwd[a].insert(b);
            back[b].insert(a);
            df_just.emplace(key, std::move(just));
            df_delta.push_back({a, b});
        }
    }

    // R4: semi-naive closure
    while (!df_delta.empty()) {
        std::unordered_map<int64_t, CompactJust> pending;
        auto offer = [&](int32_t a, int32_t b, int32_t mid) {
            if (fwd[a].count(b)) return;
            CompactJust just{rule_R4,
                             {dtuple(rel_data_flows, a, mid), dtuple(rel_data_flows, mid, b)}};
            auto [it, inserted] = pending.try_emplace(key_of(a, b), std::move(just));
            if (!inserted && premises_less(just.premises, it->second.premises))
                it->second = std::move(just);
        };
        for (const auto& [a, b] : df_delta) {
            for (int32_t c : fwd[b]) offer(a, c, b);
            for (int32_t z : back[a]) offer(z, b, a);
        }
        df_delta.clear();
        for (auto& [key, just] : pending) {
            int32_t a = (int32_t)(key / n_atoms), b = (int32_t)(key % n_atoms);
            if (fwd[a].count(b)) continue;
            fwd[a].insert(b);
            back[b].insert(a);
            df_just.emplace(key, std::move(just));
            df_delta.push_back({a, b});
        }
    }

    // ---- unary strata share one evaluator ----------------------------
    struct UnaryRelation {
        std::unordered_map<int32_t, CompactJust> just;
        bool has(int32_t v) const { return just.count(v) > 0; }
    };

    auto run_unary = [&](UnaryRelation& rel,
                         std::unordered_map<int32_t, CompactJust> seeds,
                         auto propagate) {
        std::vector<int32_t> delta;
        for (auto& [v, just] : seeds) {
            rel.just.emplace(v, std::move(just));
            delta.push_back(v);
        }
        while (!delta.empty()) {
            std::unordered_map<int32_t, CompactJust> pending;
            auto offer = [&](int32_t v, CompactJust just) {
                if (rel.has(v)) return;
                auto [it, inserted] = pending.try_emplace(v, std::move(just));
                if (!inserted && premises_less(just.premises, it->second.premises))
                    it->second = std::move(just);
            };
            for (int32_t s : delta) propagate(s, offer);
            delta.clear();
            for (auto& [v, just] : pending) {
                rel.just.emplace(v, std::move(just));
                delta.push_back(v);
            }
        }
    };

    // var_tainted
    UnaryRelation tainted;
    {
        std::unordered_map<int32_t, CompactJust> seeds;
        auto seed = [&](int32_t v, CompactJust just) {
            auto [it, inserted] = seeds.try_emplace(v, std::move(just));
            if (!inserted && premises_less(just.premises, it->second.premises))
                it->second = std::move(just);
        };
        for (const auto& [action, params] : params_by_action) {
            auto tit = triggers_by_action.find(action);
            if (tit == triggers_by_action.end()) continue;
            for (const auto& p : params)
                for (int32_t trig : tit->second)
                    if (untrusted_trigger(facts[trig].args[1]))
                        seed(p.var, {rule_T1, {base(p.fact), base(trig)}});
        }
        for (const auto& [call, call_facts] : call_facts_by_id) {
            if (trusted_calls.count(call)) continue;
            auto oit = outputs_by_call.find(call);
            if (oit == outputs_by_call.end()) continue;
            for (const auto& cf : call_facts) {
                if (!network_effect(facts[cf.fact].args[2])) continue;
                for (const auto& out : oit->second)
                    seed(out.var, {rule_T2, {base(cf.fact), base(out.fact)}});
            }
        }
        run_unary(tainted, std::move(seeds), [&](int32_t s, auto offer) {
            for (int32_t d : fwd[s])
                if (!sanitized_vars.count(d))
                    offer(d, CompactJust{rule_T3,
                                         {dtuple(rel_var_tainted, s), dtuple(rel_data_flows, s, d)}});
        });
    }

    // var_secret
    UnaryRelation secret;
    {
        std::unordered_map<int32_t, CompactJust> seeds;
        for (int32_t i = 0; i < (int32_t)facts.size(); ++i) {
            const Fact& f = facts[i];
            if (f.predicate != "secret_var") continue;
            int32_t name = id_of(f.args[1]);
            if (!declared_secrets.count(name)) continue;
            // the declaring secret() fact is located by binary search
            Fact decl{"secret", {f.args[1]}};
            auto it = std::lower_bound(facts.begin(), facts.end(), decl);
            int32_t decl_index = (int32_t)(it - facts.begin());
            CompactJust just{rule_S1, {base(decl_index), base(i)}};
            int32_t v = id_of(f.args[0]);
            auto [sit, inserted] = seeds.try_emplace(v, std::move(just));
            if (!inserted && premises_less(just.premises, sit->second.premises))
                sit->second = std::move(just);
        }
        run_unary(secret, std::move(seeds), [&](int32_t s, auto offer) {
            for (int32_t d : fwd[s])
                offer(d, CompactJust{rule_S2,
                                     {dtuple(rel_var_secret, s), dtuple(rel_data_flows, s, d)}});
        });
    }

    // call_reachable / call_unconditional
    UnaryRelation reachable, unconditional;
    {
        std::unordered_map<int32_t, CompactJust> r_seeds, u_seeds;
        for (const auto& [call, call_facts] : call_facts_by_id) {
            if (has_incoming_next.count(call) || has_incoming_cond.count(call)) continue;
            int32_t least_fact = call_facts.front().fact;
            for (const auto& cf : call_facts) least_fact = std::min(least_fact, cf.fact);
            r_seeds.try_emplace(call, CompactJust{rule_CR1, {base(least_fact)}});
            u_seeds.try_emplace(call, CompactJust{rule_CU1, {base(least_fact)}});
        }
        run_unary(reachable, std::move(r_seeds), [&](int32_t p, auto offer) {
            auto nit = next_out.find(p);
            if (nit != next_out.end())
                for (const auto& [succ, edge] : nit->second)
                    offer(succ, CompactJust{rule_CR2,
                                            {dtuple(rel_call_reachable, p), base(edge)}});
            auto cit = cond_out.find(p);
            if (cit != cond_out.end())
                for (const auto& [succ, edge] : cit->second)
                    offer(succ, CompactJust{rule_CR3,
                                            {dtuple(rel_call_reachable, p), base(edge)}});
        });
        run_unary(unconditional, std::move(u_seeds), [&](int32_t p, auto offer) {
            auto nit = next_out.find(p);
            if (nit != next_out.end())
                for (const auto& [succ, edge] : nit->second)
                    offer(succ, CompactJust{rule_CU2,
                                            {dtuple(rel_call_unconditional, p), base(edge)}});
        });
    }

    // ---- materialize the public representation -----------------------
    DerivedRelations dr;
    auto name_of = [&](int32_t id) -> const std::string& { return atom_list[id]; };
    auto expand = [&](Rel rel, int32_t a, int32_t b) {
        Tuple t;
        t.name = rel_name(rel);
        t.args.push_back(name_of(a));
        if (b >= 0) t.args.push_back(name_of(b));
        return t;
    };
    auto materialize = [&](const Tuple& concl, const CompactJust& just) {
        Justification out;
        out.rule = rule_names()[just.rule];
        out.premises.reserve(just.premises.size());
        for (const auto& p : just.premises) {
            if (p.derived)
                out.premises.push_back(expand(p.rel, p.a, p.b));
            else
                out.premises.push_back(to_tuple(facts[p.fact_index]));
        }
        dr.provenance.emplace(concl, std::move(out));
    };

    for (const auto& [key, just] : df_just) {
        int32_t a = (int32_t)(key / n_atoms), b = (int32_t)(key % n_atoms);
        dr.data_flows.insert({name_of(a), name_of(b)});
        materialize(expand(rel_data_flows, a, b), just);
    }
    for (const auto& [v, just] : tainted.just) {
        dr.var_tainted.insert(name_of(v));
        materialize(expand(rel_var_tainted, v, -1), just);
    }
    for (const auto& [v, just] : secret.just) {
        dr.var_secret.insert(name_of(v));
        materialize(expand(rel_var_secret, v, -1), just);
    }
    for (const auto& [v, just] : reachable.just) {
        dr.call_reachable.insert(name_of(v));
        materialize(expand(rel_call_reachable, v, -1), just);
    }
    for (const auto& [v, just] : unconditional.just) {
        dr.call_unconditional.insert(name_of(v));
        materialize(expand(rel_call_unconditional, v, -1), just);
    }
    return dr;
}

inline bool tuple_derived(const DerivedRelations& dr, const Tuple& t) {
    if (t.name == "data_flows")
        return t.args.size() == 2 && dr.data_flows.count({t.args[0], t.args[1]}) > 0;
    if (t.name == "var_tainted") return t.args.size() == 1 && dr.var_tainted.count(t.args[0]) > 0;
    if (t.name == "var_secret") return t.args.size() == 1 && dr.var_secret.count(t.args[0]) > 0;
    if (t.name == "call_reachable")
        return t.args.size() == 1 && dr.call_reachable.count(t.args[0]) > 0;
    if (t.name == "call_unconditional")
        return t.args.size() == 1 && dr.call_unconditional.count(t.args[0]) > 0;
    return false;
}

// Unfolds the stored justification of a derived tuple depth-first down
// to base facts. Steps come out in replay order: every derived premise
// is concluded by an earlier step.
inline WitnessPath explain(const DerivedRelations& dr, const Tuple& tuple) {
    if (!tuple_derived(dr, tuple)) throw NotDerivedError(tuple);
    WitnessPath path;
    path.conclusion = tuple;
    std::set<Tuple> emitted;

    // iterative DFS keeps deep closure chains off the call stack
    struct Frame {
        Tuple tuple;
        size_t next_premise = 0;
    };
    std::vector<Frame> stack{{tuple}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        const Justification& just = dr.provenance.at(top.tuple);
        bool descended = false;
        while (top.next_premise < just.premises.size()) {
            const Tuple& p = just.premises[top.next_premise++];
            if (derived_relation(p.name) && !emitted.count(p)) {
                stack.push_back({p});
                descended = true;
                break;
            }
        }
        if (descended) continue;
        if (!emitted.count(top.tuple)) {
            path.steps.push_back({just.rule, just.premises, top.tuple});
            emitted.insert(top.tuple);
        }
        stack.pop_back();
    }
    return path;
}

// Canonical dump of the five relations, same textual form as base
// facts. Output-only vocabulary: input files never contain these.
inline std::string serialize_derived(const DerivedRelations& dr) {
    std::string out;
    auto emit1 = [&](std::string_view name, const std::set<std::string>& rel) {
        for (const auto& v : rel) out += canonical_statement(name, {v}) + "\n";
    };
    emit1("call_reachable", dr.call_reachable);
    emit1("call_unconditional", dr.call_unconditional);
    for (const auto& [a, b] : dr.data_flows)
        out += canonical_statement("data_flows", {a, b}) + "\n";
    emit1("var_secret", dr.var_secret);
    emit1("var_tainted", dr.var_tainted);
    return out;
}

}  // namespace sdlaudit
