// parse.hpp - concrete .sdl syntax: parser and canonical serializer
//
// Statements are `pred("a","b").` with `//` line comments; whitespace is
// insignificant between tokens. Atoms are bare identifiers
// ([A-Za-z_][A-Za-z0-9_./:-]*) or double-quoted strings with backslash
// escapes for quote and backslash. The serializer always quotes, sorts
// facts by (predicate, args) and emits one statement per line, so equal
// fact sets render byte-identically.
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sdlaudit/fact.hpp"

namespace sdlaudit {

enum class ParseErrorCode {
    unknown_predicate,
    bad_arity,
    bad_enum_value,
    lex_error,
    duplicate_skill_decl,
};

inline std::string_view to_string(ParseErrorCode c) {
    switch (c) {
        case ParseErrorCode::unknown_predicate: return "unknown_predicate";
        case ParseErrorCode::bad_arity: return "bad_arity";
        case ParseErrorCode::bad_enum_value: return "bad_enum_value";
        case ParseErrorCode::lex_error: return "lex_error";
        case ParseErrorCode::duplicate_skill_decl: return "duplicate_skill_decl";
    }
    return "?";
}

struct ParseError {
    ParseErrorCode code;
    int line = 0;    // 1-based
    int column = 0;  // 1-based
    std::string message;

    std::string to_string() const {
        return std::string(sdlaudit::to_string(code)) + " at " + std::to_string(line) + ":" +
               std::to_string(column) + (message.empty() ? "" : ": " + message);
    }
};

struct ParseResult {
    std::optional<FactBase> value;
    std::optional<ParseError> error;
    bool ok() const { return value.has_value(); }
};

namespace detail {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    struct Token {
        enum Kind { atom, quoted, punct, eof, bad } kind = eof;
        std::string value;   // punct holds the single char
        int line = 0, column = 0;
        std::string error;   // for bad
    };

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.line = line_;
        t.column = col_;
        if (at_end()) {
            t.kind = Token::eof;
            return t;
        }
        char c = peek();
        if (c == '(' || c == ')' || c == ',' || c == '.') {
            advance();
            t.kind = Token::punct;
            t.value = std::string(1, c);
            return t;
        }
        if (c == '"') return quoted_string(t);
        if (is_ident_head(c)) {
            while (!at_end() && is_ident_tail(peek())) t.value.push_back(take());
            t.kind = Token::atom;
            return t;
        }
        t.kind = Token::bad;
        t.error = std::string("unexpected character '") + c + "'";
        return t;
    }

private:
    static bool is_ident_head(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_tail(char c) {
        return is_ident_head(c) || (c >= '0' && c <= '9') || c == '.' || c == '/' ||
               c == ':' || c == '-';
    }

    Token quoted_string(Token t) {
        advance();  // opening quote
        while (true) {
            if (at_end()) {
                t.kind = Token::bad;
                t.error = "unterminated string";
                return t;
            }
            char c = take();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) {
                    t.kind = Token::bad;
                    t.error = "unterminated escape";
                    return t;
                }
                char e = take();
                if (e == '"' || e == '\\') {
                    t.value.push_back(e);
                } else {
                    t.kind = Token::bad;
                    t.error = std::string("bad escape '\\") + e + "'";
                    return t;
                }
            } else {
                t.value.push_back(c);
            }
        }
        t.kind = Token::quoted;
        return t;
    }

    void skip_ws_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() {
        char c = text_[pos_];
        advance();
        return c;
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace detail

// Parses SDL source into a fact base. Checks the schema level only:
// known predicates, arity, enum membership, at most one skill
// declaration. Reference/flow/annotation invariants belong to the
// validator.
inline ParseResult parse_fact_base(std::string_view text) {
    detail::Lexer lex(text);
    using Token = detail::Lexer::Token;
    FactBase fb;
    bool seen_skill = false;

    auto fail = [](ParseErrorCode code, const Token& at, std::string msg) {
        return ParseResult{std::nullopt, ParseError{code, at.line, at.column, std::move(msg)}};
    };

    while (true) {
        Token head = lex.next();
        if (head.kind == Token::eof) break;
        if (head.kind == Token::bad)
            return fail(ParseErrorCode::lex_error, head, head.error);
        if (head.kind != Token::atom)
            return fail(ParseErrorCode::lex_error, head, "expected predicate name");

        const PredicateSpec* spec = find_predicate(head.value);
        if (!spec)
            return fail(ParseErrorCode::unknown_predicate, head, head.value);

        Token open = lex.next();
        if (open.kind != Token::punct || open.value != "(")
            return fail(ParseErrorCode::lex_error, open, "expected '('");

        std::vector<std::string> args;
        while (true) {
            Token a = lex.next();
            if (a.kind == Token::bad) return fail(ParseErrorCode::lex_error, a, a.error);
            if (a.kind != Token::atom && a.kind != Token::quoted)
                return fail(ParseErrorCode::lex_error, a, "expected atom");
            args.push_back(a.value);
            Token sep = lex.next();
            if (sep.kind == Token::punct && sep.value == ",") continue;
            if (sep.kind == Token::punct && sep.value == ")") break;
            if (sep.kind == Token::bad) return fail(ParseErrorCode::lex_error, sep, sep.error);
            return fail(ParseErrorCode::lex_error, sep, "expected ',' or ')'");
        }

        Token dot = lex.next();
        if (dot.kind != Token::punct || dot.value != ".")
            return fail(ParseErrorCode::lex_error, dot, "expected '.'");

        if (args.size() != spec->args.size())
            return fail(ParseErrorCode::bad_arity, head,
                        std::string(spec->name) + " takes " +
                            std::to_string(spec->args.size()) + " arguments, got " +
                            std::to_string(args.size()));
        for (size_t i = 0; i < args.size(); ++i)
            if (!enum_value_ok(spec->args[i], args[i]))
                return fail(ParseErrorCode::bad_enum_value, head,
                            "'" + args[i] + "' is not a valid value for argument " +
                                std::to_string(i + 1) + " of " + std::string(spec->name));
        if (head.value == "skill") {
            if (seen_skill)
                return fail(ParseErrorCode::duplicate_skill_decl, head, args[0]);
            seen_skill = true;
        }
        fb.add(Fact{head.value, std::move(args)});
    }
    return ParseResult{std::move(fb), std::nullopt};
}

inline std::string quote_atom(std::string_view atom) {
    std::string out = "\"";
    for (char c : atom) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out += '"';
    return out;
}

// One canonical statement, quoted form: pred("a","b").
inline std::string canonical_statement(std::string_view predicate,
                                       const std::vector<std::string>& args) {
    std::string out(predicate);
    out += '(';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += quote_atom(args[i]);
    }
    out += ").";
    return out;
}

// Canonical form: facts sorted by (predicate, args), one per line,
// all arguments quoted. parse(serialize(fb)) == fb.
inline std::string serialize_fact_base(const FactBase& fb) {
    std::string out;
    for (const auto& f : fb.facts()) {
        out += canonical_statement(f.predicate, f.args);
        out += '\n';
    }
    return out;
}

}  // namespace sdlaudit
