// SPDX-License-Identifier: Apache-2.0

#include "vsd/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace vsd {

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "Keyword";
        case TokenKind::Identifier: return "Identifier";
        case TokenKind::Operator: return "Operator";
        case TokenKind::NumberLiteral: return "NumberLiteral";
        case TokenKind::StringLiteral: return "StringLiteral";
        case TokenKind::Punctuation: return "Punctuation";
        case TokenKind::Comment: return "Comment";
        case TokenKind::Whitespace: return "Whitespace";
        case TokenKind::Directive: return "Directive";
    }
    return "?";
}

bool is_verilog_keyword(std::string_view word) {
    static const std::unordered_set<std::string_view> kKeywords = {
        "module", "endmodule", "macromodule",
        "input", "output", "inout",
        "wire", "reg", "integer", "real", "realtime", "time", "genvar", "event",
        "tri", "tri0", "tri1", "triand", "trior", "trireg",
        "supply0", "supply1", "wand", "wor",
        "parameter", "localparam", "defparam",
        "signed", "scalared", "vectored",
        "assign", "deassign", "force", "release",
        "always", "initial",
        "begin", "end",
        "if", "else",
        "case", "casez", "casex", "endcase", "default",
        "for", "while", "repeat", "forever", "wait", "disable",
        "posedge", "negedge", "edge",
        "or", "and", "not", "nand", "nor", "xor", "xnor",
        "buf", "bufif0", "bufif1", "notif0", "notif1",
        "function", "endfunction", "task", "endtask",
        "generate", "endgenerate",
        "specify", "endspecify",
        "fork", "join",
        "small", "medium", "large", "highz0", "highz1",
        "strong0", "strong1", "pull0", "pull1", "pullup", "pulldown",
        "weak0", "weak1",
        "primitive", "endprimitive", "table", "endtable",
        "cmos", "rcmos", "nmos", "pmos", "rnmos", "rpmos",
        "tran", "tranif0", "tranif1", "rtran", "rtranif0", "rtranif1",
        "ifnone", "automatic", "cell", "config", "endconfig", "design",
        "instance", "liblist", "library", "use", "incdir", "include",
        "noshowcancelled", "showcancelled", "pulsestyle_onevent",
        "pulsestyle_ondetect", "localparam", "specparam", "casex",
    };
    return kKeywords.count(word) > 0;
}

namespace {

// Directives that swallow the rest of their line (with \ continuation).
// A backtick followed by any other name is a macro use and lexes as just
// the backtick and the name.
bool is_line_directive(std::string_view name) {
    static const std::unordered_set<std::string_view> kLineDirectives = {
        "define", "undef", "include", "timescale",
        "ifdef", "ifndef", "elsif", "else", "endif",
        "default_nettype", "resetall", "celldefine", "endcelldefine",
        "unconnected_drive", "nounconnected_drive", "line", "pragma",
        "begin_keywords", "end_keywords",
    };
    return kLineDirectives.count(name) > 0;
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool base_digit(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '?';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            out.push_back(next());
        }
        return out;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    bool eof() const { return pos_ >= src_.size(); }

    Token make(TokenKind kind, std::size_t begin) const {
        return Token{kind, std::string(src_.substr(begin, pos_ - begin)), begin, pos_};
    }

    Token next() {
        const std::size_t begin = pos_;
        const char c = peek();

        if (std::isspace(static_cast<unsigned char>(c))) {
            while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) pos_++;
            return make(TokenKind::Whitespace, begin);
        }
        if (c == '/' && peek(1) == '/') {
            while (!eof() && peek() != '\n') pos_++;
            return make(TokenKind::Comment, begin);
        }
        if (c == '/' && peek(1) == '*') {
            pos_ += 2;
            while (!(peek() == '*' && peek(1) == '/')) {
                if (eof()) throw LexError(begin, "unterminated block comment");
                pos_++;
            }
            pos_ += 2;
            return make(TokenKind::Comment, begin);
        }
        if (c == '"') return lex_string(begin);
        if (c == '`') return lex_directive(begin);
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(begin);
        if (c == '\'') return lex_based_tail(begin);
        if (ident_start(c)) return lex_word(begin);
        if (c == '$') {
            pos_++;
            while (!eof() && ident_char(peek())) pos_++;
            return make(TokenKind::Identifier, begin);
        }
        if (c == '\\') {  // escaped identifier, terminated by whitespace
            pos_++;
            while (!eof() && !std::isspace(static_cast<unsigned char>(peek()))) pos_++;
            return make(TokenKind::Identifier, begin);
        }
        return lex_symbol(begin);
    }

    Token lex_string(std::size_t begin) {
        pos_++;
        while (true) {
            if (eof() || peek() == '\n') throw LexError(begin, "unterminated string");
            if (peek() == '\\' && pos_ + 1 < src_.size()) {
                pos_ += 2;
                continue;
            }
            if (peek() == '"') {
                pos_++;
                return make(TokenKind::StringLiteral, begin);
            }
            pos_++;
        }
    }

    Token lex_directive(std::size_t begin) {
        pos_++;  // backtick
        std::size_t name_begin = pos_;
        while (!eof() && (ident_char(peek()) && peek() != '$')) pos_++;
        std::string_view name = src_.substr(name_begin, pos_ - name_begin);
        if (is_line_directive(name)) {
            while (!eof() && peek() != '\n') {
                if (peek() == '\\' && peek(1) == '\n') {
                    pos_ += 2;
                    continue;
                }
                pos_++;
            }
        }
        return make(TokenKind::Directive, begin);
    }

    Token lex_number(std::size_t begin) {
        while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_'))
            pos_++;
        if (peek() == '\'') {
            consume_based_body();
            return make(TokenKind::NumberLiteral, begin);
        }
        bool real = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            real = true;
            pos_++;
            while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_'))
                pos_++;
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t mark = pos_;
            pos_++;
            if (peek() == '+' || peek() == '-') pos_++;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                real = true;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) pos_++;
            } else {
                pos_ = mark;
            }
        }
        (void)real;
        return make(TokenKind::NumberLiteral, begin);
    }

    // A based literal without a size, e.g. 'b0 or 'sh3f.
    Token lex_based_tail(std::size_t begin) {
        consume_based_body();
        return make(TokenKind::NumberLiteral, begin);
    }

    void consume_based_body() {
        const std::size_t apos = pos_;
        pos_++;  // apostrophe
        if (peek() == 's' || peek() == 'S') pos_++;
        switch (peek()) {
            case 'b': case 'B': case 'o': case 'O':
            case 'd': case 'D': case 'h': case 'H':
                pos_++;
                break;
            default:
                throw LexError(apos, "malformed based literal");
        }
        if (!base_digit(peek())) throw LexError(apos, "malformed based literal");
        while (!eof() && base_digit(peek())) pos_++;
    }

    Token lex_word(std::size_t begin) {
        while (!eof() && ident_char(peek())) pos_++;
        std::string_view word = src_.substr(begin, pos_ - begin);
        return make(is_verilog_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin);
    }

    Token lex_symbol(std::size_t begin) {
        static constexpr std::array<std::string_view, 4> kOps3 = {"===", "!==", "<<<", ">>>"};
        static constexpr std::array<std::string_view, 16> kOps2 = {
            "==", "!=", "<=", ">=", "&&", "||", "<<", ">>",
            "~&", "~|", "~^", "^~", "**", "+:", "-:", "->"};
        std::string_view rest = src_.substr(pos_);
        for (auto op : kOps3) {
            if (rest.substr(0, 3) == op) {
                pos_ += 3;
                return make(TokenKind::Operator, begin);
            }
        }
        for (auto op : kOps2) {
            if (rest.substr(0, 2) == op) {
                pos_ += 2;
                return make(TokenKind::Operator, begin);
            }
        }
        const char c = peek();
        if (std::string_view("+-*/%&|^~!<>=?").find(c) != std::string_view::npos) {
            pos_++;
            return make(TokenKind::Operator, begin);
        }
        if (std::string_view("()[]{};,.:#@").find(c) != std::string_view::npos) {
            pos_++;
            return make(TokenKind::Punctuation, begin);
        }
        throw LexError(begin, "unexpected byte");
    }
};

}  // namespace

std::vector<Token> lex(std::string_view source) {
    return Lexer(source).run();
}

}  // namespace vsd
