// fixtures.hpp - shared fixture fact bases and temp-tree helpers
#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <unistd.h>

#include "sdlaudit/parse.hpp"

namespace fixtures {

// Minimal fetch-and-sign skill: one action, a network read feeding a
// chain-write through a shared variable.
inline std::string ex41_text() {
    return R"(skill("s").
action("a","s").
action_trigger("a","llm").
call("c1","a","net_read").
call("c2","a","chain_write").
call_next("c1","c2").
call_output("c1","body","v").
call_input("c2","msg","v").
)";
}

// Same skill with the producer of v dropped: fails the flow invariant.
inline std::string ex43_text() {
    return R"(skill("s").
action("a","s").
action_trigger("a","llm").
call("c1","a","net_read").
call("c2","a","chain_write").
call_next("c1","c2").
call_input("c2","msg","v").
)";
}

// Structurally valid truncation that captures only the network read.
inline std::string ex44_text() {
    return R"(skill("s").
action("a","s").
action_trigger("a","llm").
call("c1","a","net_read").
)";
}

// Wallet-signing skill driven by external messages, no gate anywhere.
inline std::string clawnads_text() {
    return R"(skill("claw").
action("act_sign","claw").
action_trigger("act_sign","external").
action_param("act_sign","message","v_sign_msg").
call("c_sign","act_sign","crypto_sign").
call_input("c_sign","message","v_sign_msg").
)";
}

// Two-paragraph source document the fetch-and-sign candidates are
// scored against: one unit per pipeline half.
inline std::string fetch_and_sign_doc() {
    return "Fetches data over the network.\n\nSigns and submits a blockchain transaction.\n";
}

inline sdlaudit::FactBase parse_or_die(const std::string& text) {
    auto r = sdlaudit::parse_fact_base(text);
    if (!r.ok()) throw std::runtime_error("fixture does not parse: " + r.error->to_string());
    return std::move(*r.value);
}

inline sdlaudit::FactBase ex41() { return parse_or_die(ex41_text()); }
inline sdlaudit::FactBase ex43() { return parse_or_die(ex43_text()); }
inline sdlaudit::FactBase ex44() { return parse_or_die(ex44_text()); }
inline sdlaudit::FactBase clawnads() { return parse_or_die(clawnads_text()); }

// Writes a file tree under a fresh temp directory; removed on scope exit.
class TempTree {
public:
    TempTree(std::initializer_list<std::pair<const std::string, std::string>> files)
        : TempTree(std::map<std::string, std::string>(files)) {}

    explicit TempTree(const std::map<std::string, std::string>& files) {
        static std::atomic<unsigned> counter{0};
        root_ = std::filesystem::temp_directory_path() /
                ("sdlaudit_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(root_);
        for (const auto& [rel, content] : files) {
            std::filesystem::path p = root_ / rel;
            std::filesystem::create_directories(p.parent_path());
            std::ofstream out(p, std::ios::binary);
            out << content;
        }
    }
    ~TempTree() {
        std::error_code ec;
        std::filesystem::remove_all(root_, ec);
    }
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
};

}  // namespace fixtures
