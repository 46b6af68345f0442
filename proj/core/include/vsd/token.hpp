// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsd {

enum class TokenKind {
    Keyword,
    Identifier,
    Operator,
    NumberLiteral,
    StringLiteral,
    Punctuation,
    Comment,
    Whitespace,
    Directive,
};

const char* token_kind_name(TokenKind kind);

// One verbatim slice of the source. Whitespace and comments are tokens too:
// concatenating `text` over a lexed stream reproduces the input byte-for-byte.
struct Token {
    TokenKind kind = TokenKind::Whitespace;
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool is_trivia() const {
        return kind == TokenKind::Whitespace || kind == TokenKind::Comment;
    }
};

class LexError : public std::runtime_error {
public:
    LexError(std::size_t offset, const std::string& message)
        : std::runtime_error(message + " at byte " + std::to_string(offset)),
          offset_(offset),
          message_(message) {}

    std::size_t offset() const { return offset_; }
    const std::string& message() const { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t begin, std::size_t end, const std::string& expected)
        : std::runtime_error("syntax error at bytes [" + std::to_string(begin) + ", " +
                             std::to_string(end) + "): " + expected),
          begin_(begin),
          end_(end),
          expected_(expected) {}

    std::size_t begin() const { return begin_; }
    std::size_t end() const { return end_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t begin_;
    std::size_t end_;
    std::string expected_;
};

}  // namespace vsd
