#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

// Minimal DOT syntax checker for the round-trip tests: tokenizes quoted
// strings and identifiers and verifies the digraph { stmt... } structure
// with balanced quoting, brackets, and edge arrows.
namespace testsupport {

namespace dot_detail {

struct Token {
    enum Kind { Id, Quoted, Arrow, LBrace, RBrace, LBracket, RBracket,
                Semi, Equals, Comma, End, Bad } kind;
    std::string text;
};

inline bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '%' || c == '-' || c == '+';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ >= text_.size()) return {Token::End, ""};
        char c = text_[pos_];
        if (c == '{') { ++pos_; return {Token::LBrace, "{"}; }
        if (c == '}') { ++pos_; return {Token::RBrace, "}"}; }
        if (c == '[') { ++pos_; return {Token::LBracket, "["}; }
        if (c == ']') { ++pos_; return {Token::RBracket, "]"}; }
        if (c == ';') { ++pos_; return {Token::Semi, ";"}; }
        if (c == '=') { ++pos_; return {Token::Equals, "="}; }
        if (c == ',') { ++pos_; return {Token::Comma, ","}; }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            pos_ += 2;
            return {Token::Arrow, "->"};
        }
        if (c == '"') {
            std::string s;
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\') {
                    if (pos_ + 1 >= text_.size()) return {Token::Bad, ""};
                    s += text_[pos_ + 1];
                    pos_ += 2;
                } else {
                    s += text_[pos_++];
                }
            }
            if (pos_ >= text_.size()) return {Token::Bad, ""};  // unterminated
            ++pos_;
            return {Token::Quoted, s};
        }
        if (id_char(c)) {
            std::string s;
            while (pos_ < text_.size() && id_char(text_[pos_])) s += text_[pos_++];
            return {Token::Id, s};
        }
        return {Token::Bad, std::string(1, c)};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace dot_detail

// Accepts the subset of DOT the library emits; rejects unbalanced
// quotes/braces/brackets and malformed statements.
inline bool valid_dot(std::string_view text) {
    using dot_detail::Token;
    dot_detail::Lexer lex(text);
    Token t = lex.next();
    if (t.kind != Token::Id || t.text != "digraph") return false;
    t = lex.next();
    if (t.kind == Token::Id || t.kind == Token::Quoted) t = lex.next();  // name
    if (t.kind != Token::LBrace) return false;

    auto is_name = [](const Token& tok) {
        return tok.kind == Token::Id || tok.kind == Token::Quoted;
    };
    auto parse_attrs = [&](Token& tok) {
        // caller saw '['; leaves tok on the token after ']'
        tok = lex.next();
        if (tok.kind == Token::RBracket) {
            tok = lex.next();
            return true;
        }
        for (;;) {
            if (!is_name(tok)) return false;
            tok = lex.next();
            if (tok.kind != Token::Equals) return false;
            tok = lex.next();
            if (!is_name(tok)) return false;
            tok = lex.next();
            if (tok.kind == Token::RBracket) {
                tok = lex.next();
                return true;
            }
            if (tok.kind == Token::Comma) tok = lex.next();  // a,b and a b both fine
        }
    };

    t = lex.next();
    while (t.kind != Token::RBrace) {
        if (!is_name(t)) return false;
        t = lex.next();
        while (t.kind == Token::Arrow) {
            t = lex.next();
            if (!is_name(t)) return false;
            t = lex.next();
        }
        if (t.kind == Token::LBracket) {
            if (!parse_attrs(t)) return false;
        }
        if (t.kind == Token::Semi) t = lex.next();
        if (t.kind == Token::End || t.kind == Token::Bad) return false;
    }
    return lex.next().kind == Token::End;
}

}  // namespace testsupport
