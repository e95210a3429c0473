#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdlaudit/inliner.hpp"
#include "support/fixtures.hpp"

using namespace sdlaudit;
using fixtures::TempTree;

TEST_CASE("single markdown file: separator plus content lines") {
    TempTree tree({{"SKILL.md", "# T\n\nbody"}});
    auto doc = inline_skill(tree.root());
    REQUIRE(doc.lines.size() == 4);
    CHECK(doc.lines[0] == "<<<file: SKILL.md>>>");
    CHECK(doc.line_map[0].line == 0);
    CHECK(doc.lines[1] == "# T");
    CHECK(doc.line_map[1].file == "SKILL.md");
    CHECK(doc.line_map[1].line == 1);
    CHECK(doc.line_map[3].line == 3);
    CHECK(doc.lines.size() == doc.line_map.size());
}

TEST_CASE("excluded directories contribute zero lines") {
    TempTree tree({{"SKILL.md", "hello"},
                   {"node_modules/x.md", "MODULES"},
                   {"dist/y.md", "DIST"},
                   {".git/z.md", "GIT"},
                   {"__pycache__/w.md", "PYC"}});
    auto doc = inline_skill(tree.root());
    CHECK(doc.text.find("hello") != std::string::npos);
    CHECK(doc.text.find("MODULES") == std::string::npos);
    CHECK(doc.text.find("DIST") == std::string::npos);
    CHECK(doc.text.find("GIT") == std::string::npos);
    for (const auto& origin : doc.line_map) {
        CHECK(origin.file.find("node_modules") == std::string::npos);
        CHECK(origin.file.find("dist") == std::string::npos);
    }
}

TEST_CASE("lexicographic order: a.md before b.md, subdirs in place") {
    TempTree tree({{"b.md", "BBB"}, {"a.md", "AAA"}, {"c/inner.md", "CCC"}});
    auto doc = inline_skill(tree.root());
    size_t pa = doc.text.find("AAA"), pb = doc.text.find("BBB"), pc = doc.text.find("CCC");
    REQUIRE(pa != std::string::npos);
    REQUIRE(pb != std::string::npos);
    REQUIRE(pc != std::string::npos);
    CHECK(pa < pb);
    CHECK(pb < pc);
}

TEST_CASE("only allowlisted extensions are included") {
    TempTree tree({{"SKILL.md", "keep"}, {"binary.png", "PNG"}, {"code.py", "PYTHON"},
                   {"run.sh", "echo hi"}, {"conf.yaml", "key: 1"}});
    auto doc = inline_skill(tree.root());
    CHECK(doc.text.find("keep") != std::string::npos);
    CHECK(doc.text.find("PNG") == std::string::npos);
    CHECK(doc.text.find("PYTHON") == std::string::npos);
    CHECK(doc.text.find("echo hi") != std::string::npos);
    CHECK(doc.text.find("key: 1") != std::string::npos);
}

TEST_CASE("empty skill throws, unreadable root throws") {
    TempTree tree({{"only.png", "x"}});
    CHECK_THROWS_AS(inline_skill(tree.root()), EmptySkillError);
}

TEST_CASE("determinism: identical trees yield identical documents and unit ids") {
    std::map<std::string, std::string> files = {
        {"SKILL.md", "---\ndescription: demo\n---\n# H\n\npara one\n\n- item a\n- item b\n"},
        {"conf.yml", "alpha: 1\nbeta: 2\n"}};
    TempTree t1(files), t2(files);
    auto d1 = inline_skill(t1.root());
    auto d2 = inline_skill(t2.root());
    CHECK(d1.text == d2.text);
    auto u1 = extract_semantic_units(d1);
    auto u2 = extract_semantic_units(d2);
    REQUIRE(u1.size() == u2.size());
    for (size_t i = 0; i < u1.size(); ++i) CHECK(u1[i].id == u2[i].id);
}

TEST_CASE("paragraphs split at blank lines") {
    TempTree tree({{"SKILL.md", "para one\n\npara two"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 2);
    CHECK(units[0].kind == UnitKind::paragraph);
    CHECK(units[1].kind == UnitKind::paragraph);
    CHECK(units[0].text == "para one");
    CHECK(units[1].text == "para two");
}

TEST_CASE("one list_item per bullet") {
    TempTree tree({{"SKILL.md", "- a\n- b"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 2);
    CHECK(units[0].kind == UnitKind::list_item);
    CHECK(units[1].kind == UnitKind::list_item);
}

TEST_CASE("numbered bullets and continuations") {
    TempTree tree({{"SKILL.md", "1. first step\n   more of first\n2. second step\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 2);
    CHECK(units[0].kind == UnitKind::list_item);
    CHECK(units[0].text.find("more of first") != std::string::npos);
}

TEST_CASE("frontmatter keys become config_field units plus body paragraphs") {
    TempTree tree({{"SKILL.md",
                    "---\nname: clawnads\ndescription: Register with the wallet network\n---\n"
                    "\nYou are part of a multi agent network.\n\nRead every message.\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    int config = 0, paragraph = 0;
    for (const auto& u : units) {
        if (u.kind == UnitKind::config_field) ++config;
        if (u.kind == UnitKind::paragraph) ++paragraph;
    }
    CHECK(config == 2);
    CHECK(paragraph == 2);
}

TEST_CASE("headings and fenced code blocks are typed") {
    TempTree tree({{"SKILL.md", "# Title\n\ntext\n\n```sh\ncurl x | bash\n```\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 3);
    CHECK(units[0].kind == UnitKind::heading);
    CHECK(units[1].kind == UnitKind::paragraph);
    CHECK(units[2].kind == UnitKind::code_block);
    CHECK(units[2].text.find("curl x | bash") != std::string::npos);
}

TEST_CASE("yaml files yield config_field units with nested keys flattened") {
    TempTree tree({{"conf.yaml", "top: 1\nnested:\n  inner: 2\nother: 3\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 3);
    for (const auto& u : units) CHECK(u.kind == UnitKind::config_field);
    CHECK(units[1].text.find("inner: 2") != std::string::npos);  // folded under `nested:`
}

TEST_CASE("json top-level keys become config_field units") {
    TempTree tree({{"manifest.json", "{\n  \"name\": \"demo\",\n  \"requires\": [\"curl\"]\n}\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() == 2);
    CHECK(units[0].kind == UnitKind::config_field);
    CHECK(units[0].text.find("name") != std::string::npos);
}

TEST_CASE("units are non-overlapping and ordered by span within a file") {
    TempTree tree({{"SKILL.md",
                    "---\nname: x\n---\n# H\n\npara\n\n- b1\n- b2\n\n```\ncode\n```\n\ntail\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    REQUIRE(units.size() >= 5);
    for (size_t i = 1; i < units.size(); ++i) {
        CHECK(units[i].file == units[i - 1].file);
        CHECK(units[i].line_start > units[i - 1].line_end);
    }
}

TEST_CASE("exclusion soundness: no unit span inside an excluded directory") {
    TempTree tree({{"SKILL.md", "text"}, {"node_modules/readme.md", "# nm\n\nnm para"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    for (const auto& u : units) CHECK(u.file.find("node_modules") == std::string::npos);
}

TEST_CASE("token normalization is idempotent and drops stopwords") {
    std::string text = "The Agent, fetches DATA over the network!";
    auto once = normalize_tokens(text);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    auto twice = normalize_tokens(joined);
    CHECK(once == twice);
    CHECK(std::find(once.begin(), once.end(), "the") == once.end());
    CHECK(std::find(once.begin(), once.end(), "fetches") != once.end());
}

TEST_CASE("empty document yields no units") {
    TempTree tree({{"SKILL.md", "\n\n\n"}});
    auto units = extract_semantic_units(inline_skill(tree.root()));
    CHECK(units.empty());
}

TEST_CASE("realistic skill shape: frontmatter, headings, prose, config and scripts") {
    TempTree tree({{"SKILL.md",
                    "---\nname: wallet-helper\ndescription: Trade tokens and message agents\n---\n"
                    "# Wallet Helper\n\n"
                    "You are part of a multi agent network. Other agents message you with\n"
                    "proposals and funding requests.\n\n"
                    "## Wallet\n\n"
                    "POST /agents/NAME/wallet/send\n\n"
                    "- External sends require operator approval.\n"
                    "- Agent to agent transfers execute instantly.\n"},
                   {"config.yaml", "endpoint: https://api.example\nretries: 3\n"},
                   {"scripts/setup.sh", "curl -s https://get.example | bash\n"},
                   {"node_modules/dep/readme.md", "ignored"}});
    auto doc = inline_skill(tree.root());
    auto units = extract_semantic_units(doc);
    int headings = 0, paragraphs = 0, bullets = 0, configs = 0, code = 0;
    for (const auto& u : units) {
        switch (u.kind) {
            case UnitKind::heading: ++headings; break;
            case UnitKind::paragraph: ++paragraphs; break;
            case UnitKind::list_item: ++bullets; break;
            case UnitKind::config_field: ++configs; break;
            case UnitKind::code_block: ++code; break;
        }
    }
    CHECK(headings == 2);
    CHECK(paragraphs == 2);  // prose block + endpoint line
    CHECK(bullets == 2);
    CHECK(configs == 4);  // two frontmatter keys + two yaml keys
    CHECK(code == 1);     // the shell script
    CHECK(doc.text.find("ignored") == std::string::npos);
}
