// tokenize.hpp - deterministic text normalization for coverage scoring
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sdlaudit {

// Fixed embedded stopword list so normalization is identical across
// environments. Function words only; domain vocabulary stays.
inline const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "about", "above", "across", "after", "again", "against", "all",
        "along", "also", "although", "among", "an", "and", "any", "are",
        "around", "as", "at", "be", "because", "been", "before", "being",
        "between", "both", "but", "by", "can", "could", "did", "do", "does",
        "doing", "down", "during", "each", "else", "few", "for", "from",
        "had", "has", "have", "having", "he", "her", "here", "his", "how",
        "i", "if", "in", "into", "is", "it", "its", "just", "may", "me",
        "might", "more", "most", "must", "my", "no", "nor", "not", "of",
        "off", "on", "once", "only", "onto", "or", "other", "our", "out",
        "over", "own", "per", "shall", "she", "should", "since", "so",
        "some", "such", "than", "that", "the", "their", "them", "then",
        "there", "these", "they", "this", "those", "through", "to", "too",
        "towards", "under", "unless", "until", "up", "upon", "very", "via",
        "was", "we", "were", "what", "when", "where", "which", "while",
        "who", "why", "will", "with", "within", "without", "would", "you",
        "your",
    };
    return words;
}

// Lowercases, strips punctuation (every non-alphanumeric ASCII byte
// becomes a separator; bytes >= 0x80 are kept so UTF-8 survives),
// splits on whitespace and drops stopwords. Idempotent: normalizing
// the joined token list again yields the same tokens.
inline std::vector<std::string> normalize_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && !stopwords().count(cur)) tokens.push_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c >= 0x80) {
            cur.push_back(ch);
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            cur.push_back(ch);
        } else if (c >= 'A' && c <= 'Z') {
            cur.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

inline std::set<std::string> token_set(std::string_view text) {
    auto toks = normalize_tokens(text);
    return std::set<std::string>(toks.begin(), toks.end());
}

// 64-bit FNV-1a; used for stable unit ids (std::hash is not portable).
inline uint64_t fnv1a(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL) {
    uint64_t h = seed;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace sdlaudit
