#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdlaudit/detectors.hpp"
#include "sdlaudit/validator.hpp"
#include "support/fixtures.hpp"

using namespace sdlaudit;

namespace {

std::vector<Finding> detect(const FactBase& fb) { return run_detectors(fb, derive(fb)); }

std::vector<std::string> names(const std::vector<Finding>& findings) {
    std::vector<std::string> out;
    for (const auto& f : findings) out.push_back(f.detector);
    return out;
}

std::string binding(const Finding& f, const std::string& name) {
    for (const auto& [k, v] : f.bindings)
        if (k == name) return v;
    return {};
}

}  // namespace

TEST_CASE("detector table partitions 1/4/6 across the three classes") {
    CHECK(detector_table.size() == 11);
    int sink = 0, taint = 0, structural = 0;
    for (const auto& d : detector_table) {
        if (d.cls == FindingClass::unguarded_sink) ++sink;
        if (d.cls == FindingClass::taint_flow) ++taint;
        if (d.cls == FindingClass::structural_anomaly) ++structural;
    }
    CHECK(sink == 1);
    CHECK(taint == 4);
    CHECK(structural == 6);
}

TEST_CASE("prohibits table is total and pins read_only") {
    CHECK(prohibits("read_only") == std::set<std::string>{"fs_write", "net_write", "chain_write"});
    CHECK(prohibits("local_only") == std::set<std::string>{"net_read", "net_write"});
    CHECK(prohibits("no_network") == std::set<std::string>{"net_read", "net_write"});
    CHECK(prohibits("no_exec") == std::set<std::string>{"proc_exec", "code_eval"});
    for (auto claim : claim_names) CHECK(!prohibits(std::string(claim)).empty());
}

TEST_CASE("fetch-and-sign base: exactly MHG and UCI on the signing call") {
    auto findings = detect(fixtures::ex41());
    REQUIRE(names(findings) == std::vector<std::string>{"MHG", "UCI"});
    for (const auto& f : findings) {
        CHECK(binding(f, "skill") == "s");
        CHECK(binding(f, "action") == "a");
        CHECK(binding(f, "call") == "c2");
    }
    CHECK(findings[0].cls == FindingClass::unguarded_sink);
    CHECK(findings[1].cls == FindingClass::taint_flow);
    REQUIRE(findings[1].witnesses.size() == 1);
    CHECK(findings[1].witnesses[0].conclusion == Tuple{"var_tainted", {"v"}});
}

TEST_CASE("wallet-signing skill: exactly MHG and UCI on the sign call") {
    auto findings = detect(fixtures::clawnads());
    REQUIRE(names(findings) == std::vector<std::string>{"MHG", "UCI"});
    for (const auto& f : findings) {
        CHECK(binding(f, "action") == "act_sign");
        CHECK(binding(f, "call") == "c_sign");
    }
}

TEST_CASE("a human approval gate suppresses MHG and UCI; allowlist does not") {
    auto gated = fixtures::ex41();
    gated.add({"barrier_gate", {"a", "human_approval"}});
    CHECK(detect(gated).empty());

    auto allowlisted = fixtures::ex41();
    allowlisted.add({"barrier_gate", {"a", "allowlist"}});
    CHECK(names(detect(allowlisted)) == std::vector<std::string>{"MHG", "UCI"});
}

TEST_CASE("sanitizing the propagated sink variable suppresses UCI but not MHG") {
    // taint reaches the signing input v only through propagation from
    // the network read's output w
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c0\",\"a\",\"net_read\").\ncall(\"c1\",\"a\",\"fs_read\").\n"
        "call(\"c2\",\"a\",\"chain_write\").\n"
        "call_next(\"c0\",\"c1\").\ncall_next(\"c1\",\"c2\").\n"
        "call_output(\"c0\",\"p\",\"w\").\ncall_input(\"c1\",\"q\",\"w\").\n"
        "call_output(\"c1\",\"p\",\"v\").\ncall_input(\"c2\",\"q\",\"v\").");
    REQUIRE(validate(fb).empty());
    CHECK(names(detect(fb)) == std::vector<std::string>{"MHG", "UCI"});

    auto sanitized = fb;
    sanitized.add({"barrier_sanitize", {"v", "entry"}});
    CHECK(names(detect(sanitized)) == std::vector<std::string>{"MHG"});

    // sanitizing the seed output is ineffective: seed rules carry no
    // sanitize premise, so the raw network value stays tainted
    auto seed_sanitized = fb;
    seed_sanitized.add({"barrier_sanitize", {"w", "entry"}});
    CHECK(names(detect(seed_sanitized)) == std::vector<std::string>{"MHG", "UCI"});
}

TEST_CASE("DEP fires on tainted unconditional exec and respects sanitizers") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c0\",\"a\",\"net_read\").\ncall(\"c1\",\"a\",\"fs_read\").\n"
        "call(\"c2\",\"a\",\"proc_exec\").\n"
        "call_next(\"c0\",\"c1\").\ncall_next(\"c1\",\"c2\").\n"
        "call_output(\"c0\",\"p\",\"w\").\ncall_input(\"c1\",\"q\",\"w\").\n"
        "call_output(\"c1\",\"p\",\"cmd\").\ncall_input(\"c2\",\"q\",\"cmd\").");
    auto findings = detect(fb);
    auto ns = names(findings);
    CHECK(std::count(ns.begin(), ns.end(), "DEP") == 1);
    for (const auto& f : findings)
        if (f.detector == "DEP") {
            REQUIRE(f.witnesses.size() == 2);
            CHECK(f.witnesses[0].conclusion == Tuple{"var_tainted", {"cmd"}});
            CHECK(f.witnesses[1].conclusion == Tuple{"call_unconditional", {"c2"}});
        }

    auto cut = fb;
    cut.add({"barrier_sanitize", {"cmd", "entry"}});
    auto after = names(detect(cut));
    CHECK(std::count(after.begin(), after.end(), "DEP") == 0);
    CHECK(std::count(after.begin(), after.end(), "UCI") == 0);
}

TEST_CASE("DEP needs the exec to be unconditional") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c1\",\"a\",\"net_read\").\ncall(\"c2\",\"a\",\"proc_exec\").\n"
        "call_conditional(\"c1\",\"c2\").\n"
        "call_output(\"c1\",\"p\",\"cmd\").\ncall_input(\"c2\",\"q\",\"cmd\").");
    auto ns = names(detect(fb));
    CHECK(std::count(ns.begin(), ns.end(), "DEP") == 0);
    CHECK(std::count(ns.begin(), ns.end(), "DMP") == 1);  // dormant instead
}

TEST_CASE("SLRO clause one: secret outside its allowlist") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\ncall(\"c\",\"a\",\"net_write\").\n"
        "secret(\"tok\").\nsecret_var(\"sv\",\"tok\").\n"
        "action(\"owner\",\"s\").\nsecret_allowed(\"tok\",\"owner\").\n"
        "call(\"co\",\"owner\",\"fs_read\").\ncall_output(\"co\",\"p\",\"sv\").\n"
        "call_input(\"c\",\"q\",\"sv\").");
    auto findings = detect(fb);
    bool slro = false;
    for (const auto& f : findings)
        if (f.detector == "SLRO") {
            slro = true;
            CHECK(binding(f, "secret") == "tok");
            CHECK(binding(f, "call") == "c");
        }
    CHECK(slro);

    // allowing the action silences clause one
    auto allowed = fb;
    allowed.add({"secret_allowed", {"tok", "a"}});
    auto ns = names(detect(allowed));
    CHECK(std::count(ns.begin(), ns.end(), "SLRO") == 0);
}

TEST_CASE("SLRO clause two: secret and tainted variable co-enter an untrusted call") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\naction_trigger(\"a\",\"external\").\n"
        "action_param(\"a\",\"msg\",\"tv\").\n"
        "secret(\"tok\").\nsecret_var(\"sv\",\"tok\").\nsecret_allowed(\"tok\",\"a\").\n"
        "call(\"cs\",\"a\",\"fs_read\").\ncall_output(\"cs\",\"p\",\"sv\").\n"
        "call(\"c\",\"a\",\"net_write\").\ncall_next(\"cs\",\"c\").\n"
        "call_input(\"c\",\"s\",\"sv\").\ncall_input(\"c\",\"t\",\"tv\").");
    auto findings = detect(fb);
    int slro = 0;
    for (const auto& f : findings)
        if (f.detector == "SLRO") {
            ++slro;
            CHECK(binding(f, "secret") == "tok");
            REQUIRE(f.witnesses.size() == 1);
            CHECK(f.witnesses[0].conclusion == Tuple{"var_tainted", {"tv"}});
        }
    CHECK(slro == 1);  // keyed on (skill, action, call, secret), not per pair

    // a trusted target disarms clause two
    auto trusted = fb;
    trusted.add({"call_target_trusted", {"c"}});
    auto ns = names(detect(trusted));
    CHECK(std::count(ns.begin(), ns.end(), "SLRO") == 0);
}

TEST_CASE("IEC fires on secret egress and is suppressed by either gate") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "secret(\"tok\").\nsecret_var(\"sv\",\"tok\").\nsecret_allowed(\"tok\",\"a\").\n"
        "call(\"c\",\"a\",\"net_write\").\ncall_input(\"c\",\"p\",\"sv\").");
    auto ns = names(detect(fb));
    CHECK(std::count(ns.begin(), ns.end(), "IEC") == 1);

    for (const char* gate : {"human_approval", "allowlist"}) {
        auto gated = fb;
        gated.add({"barrier_gate", {"a", gate}});
        auto after = names(detect(gated));
        CHECK_MESSAGE(std::count(after.begin(), after.end(), "IEC") == 0, gate);
    }
    auto trusted = fb;
    trusted.add({"call_target_trusted", {"c"}});
    auto after = names(detect(trusted));
    CHECK(std::count(after.begin(), after.end(), "IEC") == 0);
}

TEST_CASE("SC pairs a sensitive read with untrusted egress, no data flow needed") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"ar\",\"s\").\naction(\"an\",\"s\").\n"
        "call(\"cr\",\"ar\",\"fs_read\").\ncall_target(\"cr\",\"~/.aws/credentials\").\n"
        "call_target_sensitive(\"cr\").\n"
        "call(\"cn\",\"an\",\"net_write\").\ncall_target(\"cn\",\"https://collector\").");
    auto findings = detect(fb);
    bool sc = false;
    for (const auto& f : findings)
        if (f.detector == "SC") {
            sc = true;
            CHECK(binding(f, "read_call") == "cr");
            CHECK(binding(f, "net_call") == "cn");
            CHECK(f.witnesses.empty());
        }
    CHECK(sc);

    auto trusted = fb;
    trusted.add({"call_target_trusted", {"cn"}});
    auto ns = names(detect(trusted));
    CHECK(std::count(ns.begin(), ns.end(), "SC") == 0);
}

TEST_CASE("UDS flags unresolved targets with no recorded endpoint") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\ncall(\"c\",\"a\",\"fs_read\").\n"
        "call_target_unresolved(\"c\").");
    CHECK(names(detect(fb)) == std::vector<std::string>{"UDS"});

    // once a target is recorded it is HCC territory, not UDS
    auto fb2 = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\ncall(\"c\",\"a\",\"net_write\").\n"
        "call_target(\"c\",\"http://198.51.100.7/beacon\").\ncall_target_unresolved(\"c\").");
    auto ns = names(detect(fb2));
    CHECK(std::count(ns.begin(), ns.end(), "UDS") == 0);
    CHECK(std::count(ns.begin(), ns.end(), "HCC") == 1);
    for (const auto& f : detect(fb2))
        if (f.detector == "HCC") CHECK(binding(f, "target") == "http://198.51.100.7/beacon");
}

TEST_CASE("BCC: claim-forbidden effects flag unless the target is trusted") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\ndoc_claim(\"s\",\"read_only\").\naction(\"a\",\"s\").\n"
        "call(\"c\",\"a\",\"fs_write\").\ncall_target(\"c\",\"/tmp/x\").");
    auto findings = detect(fb);
    bool bcc = false;
    for (const auto& f : findings)
        if (f.detector == "BCC") {
            bcc = true;
            CHECK(binding(f, "effect") == "fs_write");
        }
    CHECK(bcc);

    auto trusted = fb;
    trusted.add({"call_target_trusted", {"c"}});
    auto ns = names(detect(trusted));
    CHECK(std::count(ns.begin(), ns.end(), "BCC") == 0);
}

TEST_CASE("OBF flags obfuscated or binary-embedding bodies") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\ncall(\"c1\",\"a\",\"fs_read\").\n"
        "call(\"c2\",\"a\",\"fs_read\").\ncall_body_obfuscated(\"c1\").\n"
        "call_body_encoded_binary(\"c2\").");
    auto ns = names(detect(fb));
    CHECK(std::count(ns.begin(), ns.end(), "OBF") == 2);
}

TEST_CASE("DMP: dangerous reachable-but-conditional calls, with witness") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c1\",\"a\",\"fs_read\").\ncall(\"c2\",\"a\",\"chain_write\").\n"
        "call_conditional(\"c1\",\"c2\").\nbarrier_gate(\"a\",\"human_approval\").");
    auto findings = detect(fb);
    REQUIRE(names(findings) == std::vector<std::string>{"DMP"});
    REQUIRE(findings[0].witnesses.size() == 1);
    CHECK(findings[0].witnesses[0].conclusion == Tuple{"call_reachable", {"c2"}});
    // every DMP call is reachable and not unconditional
    auto dr = derive(fb);
    CHECK(dr.call_reachable.count(binding(findings[0], "call")));
    CHECK(!dr.call_unconditional.count(binding(findings[0], "call")));

    // an obfuscated body behind a conditional also counts
    auto fb2 = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c1\",\"a\",\"fs_read\").\ncall(\"c2\",\"a\",\"fs_read\").\n"
        "call_conditional(\"c1\",\"c2\").\ncall_body_obfuscated(\"c2\").");
    auto ns2 = names(detect(fb2));
    CHECK(std::count(ns2.begin(), ns2.end(), "DMP") == 1);
}

TEST_CASE("findings deduplicate and sort by detector then bindings") {
    auto fb = fixtures::parse_or_die(
        "skill(\"s\").\naction(\"a\",\"s\").\n"
        "call(\"c1\",\"a\",\"proc_exec\").\ncall(\"c2\",\"a\",\"chain_write\").");
    auto findings = detect(fb);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].detector == "MHG");
    CHECK(binding(findings[0], "call") == "c1");
    CHECK(binding(findings[1], "call") == "c2");
    for (size_t i = 1; i < findings.size(); ++i) {
        auto key_prev = findings[i - 1].detector + "|" + findings[i - 1].serialized_bindings();
        auto key_cur = findings[i].detector + "|" + findings[i].serialized_bindings();
        CHECK(key_prev < key_cur);
    }
}

TEST_CASE("severity map: taint and sink detectors are critical, the rest warn") {
    for (const auto& d : detector_table) {
        bool critical = d.severity == Severity::critical;
        bool expected = std::string(d.name) == "MHG" || std::string(d.name) == "UCI" ||
                        std::string(d.name) == "DEP" || std::string(d.name) == "IEC" ||
                        std::string(d.name) == "SLRO";
        CHECK(critical == expected);
    }
}

TEST_CASE("every binding atom occurs in the fact base") {
    auto fb = fixtures::clawnads();
    for (const auto& f : detect(fb)) {
        for (const auto& [name, atom] : f.bindings) {
            bool present = false;
            for (const auto& fact : fb.facts())
                for (const auto& arg : fact.args)
                    if (arg == atom) present = true;
            CHECK_MESSAGE(present, name << "=" << atom);
        }
    }
}
