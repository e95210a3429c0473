// inliner.hpp - skill repository preprocessing: unify the sources into
// one document and extract the deterministic semantic units that anchor
// the coverage distance. No model involvement anywhere in this module.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdlaudit/tokenize.hpp"

namespace sdlaudit {

struct InlineOptions {
    std::set<std::string> extensions = {".md", ".markdown", ".yaml", ".yml",
                                        ".json", ".txt", ".sh"};
    std::set<std::string> excluded_dirs = {"dist", "build", "node_modules",
                                           ".git", "target", "vendor", "__pycache__"};
};

struct EmptySkillError : std::runtime_error {
    EmptySkillError() : std::runtime_error("no auditable file in skill directory") {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& path)
        : std::runtime_error("cannot read " + path), path(path) {}
    std::string path;
};

struct LineOrigin {
    std::string file;  // path relative to the skill root
    int line;          // 1-based source line; 0 marks a separator line
};

struct UnifiedDocument {
    std::string text;
    std::vector<std::string> lines;
    std::vector<LineOrigin> line_map;  // parallel to lines
};

enum class UnitKind { paragraph, list_item, config_field, heading, code_block };

inline std::string_view to_string(UnitKind k) {
    switch (k) {
        case UnitKind::paragraph: return "paragraph";
        case UnitKind::list_item: return "list_item";
        case UnitKind::config_field: return "config_field";
        case UnitKind::heading: return "heading";
        case UnitKind::code_block: return "code_block";
    }
    return "?";
}

struct SemanticUnit {
    std::string id;  // stable hash of normalized text + span
    UnitKind kind;
    std::string text;
    std::string file;
    int line_start;  // 1-based, inclusive
    int line_end;
    std::vector<std::string> tokens;  // normalize_tokens(text)
};

namespace detail {

inline std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : content) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline void collect_files(const std::filesystem::path& dir,
                          const std::filesystem::path& root,
                          const InlineOptions& opt,
                          std::vector<std::filesystem::path>& out) {
    std::vector<std::filesystem::directory_entry> entries;
    for (const auto& e : std::filesystem::directory_iterator(dir)) entries.push_back(e);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });
    for (const auto& e : entries) {
        std::string name = e.path().filename().string();
        if (e.is_directory()) {
            if (opt.excluded_dirs.count(name)) continue;
            collect_files(e.path(), root, opt, out);
        } else if (e.is_regular_file()) {
            if (opt.extensions.count(e.path().extension().string()))
                out.push_back(e.path());
        }
    }
}

inline std::string relative_slash_path(const std::filesystem::path& p,
                                       const std::filesystem::path& root) {
    return std::filesystem::relative(p, root).generic_string();
}

}  // namespace detail

// Depth-first lexicographic traversal; allowlisted extensions only;
// denylisted directory segments contribute nothing. Each file is
// preceded by a `<<<file: PATH>>>` separator line (mapped to source
// line 0); every content line maps to its source location.
inline UnifiedDocument inline_skill(const std::filesystem::path& root,
                                    const InlineOptions& opt = {}) {
    std::vector<std::filesystem::path> files;
    detail::collect_files(root, root, opt, files);
    if (files.empty()) throw EmptySkillError{};

    UnifiedDocument doc;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError(path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        if (in.bad()) throw IoError(path.string());
        std::string rel = detail::relative_slash_path(path, root);
        doc.lines.push_back("<<<file: " + rel + ">>>");
        doc.line_map.push_back({rel, 0});
        auto lines = detail::split_lines(buf.str());
        for (size_t i = 0; i < lines.size(); ++i) {
            doc.lines.push_back(lines[i]);
            doc.line_map.push_back({rel, static_cast<int>(i + 1)});
        }
    }
    std::string text;
    for (const auto& l : doc.lines) {
        text += l;
        text += '\n';
    }
    doc.text = std::move(text);
    return doc;
}

namespace detail {

inline bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

inline bool heading_line(const std::string& s) { return !s.empty() && s[0] == '#'; }

inline bool fence_line(const std::string& s) {
    size_t i = s.find_first_not_of(" \t");
    return i != std::string::npos && s.compare(i, 3, "```") == 0;
}

inline bool bullet_line(const std::string& s) {
    size_t i = s.find_first_not_of(" \t");
    if (i == std::string::npos) return false;
    char c = s[i];
    if ((c == '-' || c == '*' || c == '+') && i + 1 < s.size() && s[i + 1] == ' ') return true;
    // numbered items: 1. / 12. / 3)
    size_t j = i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j > i && j < s.size() && (s[j] == '.' || s[j] == ')'))
        return j + 1 >= s.size() || s[j + 1] == ' ';
    return false;
}

// Top-level `key:` or `"key":` line of a YAML/JSON-like region.
inline bool config_key_line(const std::string& s, size_t max_indent) {
    size_t i = s.find_first_not_of(" \t");
    if (i == std::string::npos || i > max_indent) return false;
    size_t j = i;
    bool quoted = s[j] == '"';
    if (quoted) ++j;
    size_t start = j;
    auto key_char = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == '.';
    };
    while (j < s.size() && key_char(s[j])) ++j;
    if (j == start) return false;
    if (quoted) {
        if (j >= s.size() || s[j] != '"') return false;
        ++j;
    }
    while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
    return j < s.size() && s[j] == ':';
}

inline size_t indent_of(const std::string& s) {
    size_t i = s.find_first_not_of(" \t");
    return i == std::string::npos ? 0 : i;
}

struct FileRegion {
    std::string file;
    std::string extension;
    size_t begin;  // index into doc.lines (first content line)
    size_t end;    // one past last content line
};

inline std::vector<FileRegion> file_regions(const UnifiedDocument& doc) {
    std::vector<FileRegion> regions;
    for (size_t i = 0; i < doc.lines.size(); ++i) {
        if (doc.line_map[i].line == 0) {
            if (!regions.empty()) regions.back().end = i;
            FileRegion r;
            r.file = doc.line_map[i].file;
            auto dot = r.file.rfind('.');
            r.extension = dot == std::string::npos ? "" : r.file.substr(dot);
            r.begin = i + 1;
            r.end = doc.lines.size();
            regions.push_back(r);
        }
    }
    return regions;
}

}  // namespace detail

namespace detail {

class UnitBuilder {
public:
    UnitBuilder(const UnifiedDocument& doc, std::vector<SemanticUnit>& out)
        : doc_(doc), out_(out) {}

    void emit(UnitKind kind, size_t begin, size_t end) {
        if (begin >= end) return;
        std::string text;
        for (size_t i = begin; i < end; ++i) {
            text += doc_.lines[i];
            if (i + 1 < end) text += '\n';
        }
        SemanticUnit u;
        u.kind = kind;
        u.text = text;
        u.file = doc_.line_map[begin].file;
        u.line_start = doc_.line_map[begin].line;
        u.line_end = doc_.line_map[end - 1].line;
        u.tokens = normalize_tokens(text);
        std::string key;
        for (const auto& t : u.tokens) {
            key += t;
            key += ' ';
        }
        key += u.file + ":" + std::to_string(u.line_start) + "-" + std::to_string(u.line_end);
        u.id = hex64(fnv1a(key));
        out_.push_back(std::move(u));
    }

private:
    const UnifiedDocument& doc_;
    std::vector<SemanticUnit>& out_;
};

// Markdown-style block scan: frontmatter keys, headings, fenced code,
// bullets, and blank-line-delimited paragraph runs.
inline void extract_markdown(const UnifiedDocument& doc, const FileRegion& r, UnitBuilder& b) {
    size_t i = r.begin;
    // YAML frontmatter at file start
    if (i < r.end && doc.lines[i] == "---") {
        size_t close = i + 1;
        while (close < r.end && doc.lines[close] != "---") ++close;
        if (close < r.end) {
            size_t k = i + 1;
            while (k < close) {
                if (config_key_line(doc.lines[k], 0)) {
                    size_t e = k + 1;
                    while (e < close && !config_key_line(doc.lines[e], 0) &&
                           !blank(doc.lines[e]))
                        ++e;
                    b.emit(UnitKind::config_field, k, e);
                    k = e;
                } else {
                    ++k;
                }
            }
            i = close + 1;
        }
    }
    while (i < r.end) {
        const std::string& line = doc.lines[i];
        if (blank(line)) {
            ++i;
            continue;
        }
        if (fence_line(line)) {
            size_t e = i + 1;
            while (e < r.end && !fence_line(doc.lines[e])) ++e;
            if (e < r.end) ++e;  // include closing fence
            b.emit(UnitKind::code_block, i, e);
            i = e;
            continue;
        }
        if (heading_line(line)) {
            b.emit(UnitKind::heading, i, i + 1);
            ++i;
            continue;
        }
        if (bullet_line(line)) {
            // one unit per bullet; continuation lines belong to the bullet
            while (i < r.end && bullet_line(doc.lines[i])) {
                size_t e = i + 1;
                while (e < r.end && !blank(doc.lines[e]) && !bullet_line(doc.lines[e]) &&
                       !heading_line(doc.lines[e]) && !fence_line(doc.lines[e]))
                    ++e;
                b.emit(UnitKind::list_item, i, e);
                i = e;
            }
            continue;
        }
        // paragraph: run until a blank line or structural marker
        size_t e = i;
        while (e < r.end && !blank(doc.lines[e]) && !heading_line(doc.lines[e]) &&
               !fence_line(doc.lines[e]) && !bullet_line(doc.lines[e]))
            ++e;
        b.emit(UnitKind::paragraph, i, e);
        i = e;
    }
}

inline void extract_config(const UnifiedDocument& doc, const FileRegion& r, UnitBuilder& b,
                           size_t max_indent) {
    size_t i = r.begin;
    while (i < r.end) {
        if (blank(doc.lines[i])) {
            ++i;
            continue;
        }
        if (config_key_line(doc.lines[i], max_indent)) {
            size_t base = indent_of(doc.lines[i]);
            size_t e = i + 1;
            while (e < r.end && !blank(doc.lines[e]) &&
                   !(config_key_line(doc.lines[e], max_indent) && indent_of(doc.lines[e]) <= base))
                ++e;
            b.emit(UnitKind::config_field, i, e);
            i = e;
        } else {
            ++i;
        }
    }
}

inline void extract_shell(const UnifiedDocument& doc, const FileRegion& r, UnitBuilder& b) {
    size_t i = r.begin;
    while (i < r.end) {
        if (blank(doc.lines[i])) {
            ++i;
            continue;
        }
        size_t e = i;
        while (e < r.end && !blank(doc.lines[e])) ++e;
        b.emit(UnitKind::code_block, i, e);
        i = e;
    }
}

}  // namespace detail

// Rule-based block extraction; kinds and spans are a pure function of
// the document. Units never overlap within a file and follow span
// order.
inline std::vector<SemanticUnit> extract_semantic_units(const UnifiedDocument& doc) {
    std::vector<SemanticUnit> units;
    detail::UnitBuilder builder(doc, units);
    for (const auto& region : detail::file_regions(doc)) {
        const std::string& ext = region.extension;
        if (ext == ".yaml" || ext == ".yml") {
            detail::extract_config(doc, region, builder, 0);
        } else if (ext == ".json") {
            detail::extract_config(doc, region, builder, 2);
        } else if (ext == ".sh") {
            detail::extract_shell(doc, region, builder);
        } else {
            detail::extract_markdown(doc, region, builder);
        }
    }
    return units;
}

}  // namespace sdlaudit
