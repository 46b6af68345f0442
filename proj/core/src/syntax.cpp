// SPDX-License-Identifier: Apache-2.0

#include "vsd/syntax.hpp"

#include "vsd/lexer.hpp"

namespace vsd {

const std::set<std::string>& mandatory_constructs() {
    static const std::set<std::string> kCore = {
        "module", "endmodule", "input", "output", "wire", "reg",
        "assign", "always", "posedge", "negedge", "begin", "end",
        "if", "else", "case", "endcase",
    };
    return kCore;
}

const char* fragment_kind_name(FragmentKind kind) {
    switch (kind) {
        case FragmentKind::Keyword: return "Keyword";
        case FragmentKind::Identifier: return "Identifier";
        case FragmentKind::Operator: return "Operator";
        case FragmentKind::Literal: return "Literal";
        case FragmentKind::Punctuation: return "Punctuation";
        case FragmentKind::Trivia: return "Trivia";
    }
    return "?";
}

namespace {

void walk(const AstNode& node, const SignificantConfig& cfg, SignificantTokenSet& out) {
    if (node.symbol == NodeSymbol::Leaf) {
        const Token& t = *node.token;
        if (t.kind == TokenKind::Keyword) out.keywords.insert(t.text);
        if (t.kind == TokenKind::Operator || t.kind == TokenKind::Punctuation)
            out.operator_classes.insert(t.text);
        return;
    }
    if (cfg.critical_nonterminals.count(node.symbol)) {
        if (const Token* head = head_token(node)) {
            if (head->kind == TokenKind::Keyword) out.keywords.insert(head->text);
            if (head->kind == TokenKind::Operator || head->kind == TokenKind::Punctuation)
                out.operator_classes.insert(head->text);
        }
    }
    for (const auto& child : node.children) walk(child, cfg, out);
}

FragmentKind fragment_kind_for(const Token& t) {
    switch (t.kind) {
        case TokenKind::Keyword: return FragmentKind::Keyword;
        case TokenKind::Identifier: return FragmentKind::Identifier;
        case TokenKind::Operator: return FragmentKind::Operator;
        case TokenKind::NumberLiteral:
        case TokenKind::StringLiteral: return FragmentKind::Literal;
        case TokenKind::Punctuation: return FragmentKind::Punctuation;
        case TokenKind::Directive: return FragmentKind::Keyword;
        default: return FragmentKind::Trivia;
    }
}

}  // namespace

SignificantTokenSet extract_significant_tokens(const Ast& ast, const SignificantConfig& cfg) {
    SignificantTokenSet out;
    walk(ast.root, cfg, out);
    out.keywords.insert(cfg.supplemental.begin(), cfg.supplemental.end());
    out.keywords.insert(mandatory_constructs().begin(), mandatory_constructs().end());
    out.includes_identifiers = true;
    out.includes_literals = true;
    return out;
}

SignificantTokenSet default_significant_set() {
    SignificantTokenSet out;
    out.keywords = mandatory_constructs();
    static const char* kAll[] = {
        "inout", "integer", "real", "realtime", "time", "genvar", "event",
        "tri", "tri0", "tri1", "triand", "trior", "trireg", "supply0", "supply1",
        "wand", "wor", "parameter", "localparam", "defparam", "signed",
        "initial", "casez", "casex", "default", "for", "while", "repeat",
        "forever", "wait", "disable", "edge", "or", "and", "not", "nand",
        "nor", "xor", "xnor", "buf", "function", "endfunction", "task",
        "endtask", "generate", "endgenerate", "fork", "join", "macromodule",
    };
    for (const char* kw : kAll) out.keywords.insert(kw);
    static const char* kOps[] = {
        "===", "!==", "<<<", ">>>", "==", "!=", "<=", ">=", "&&", "||",
        "<<", ">>", "~&", "~|", "~^", "^~", "**", "+:", "-:", "->",
        "+", "-", "*", "/", "%", "&", "|", "^", "~", "!", "<", ">", "=", "?",
        "(", ")", "[", "]", "{", "}", ";", ",", ".", ":", "#", "@",
    };
    for (const char* op : kOps) out.operator_classes.insert(op);
    return out;
}

bool is_significant(const Token& token, const SignificantTokenSet& sig) {
    switch (token.kind) {
        case TokenKind::Keyword:
            return sig.keywords.count(token.text) > 0;
        case TokenKind::Operator:
        case TokenKind::Punctuation:
            return sig.operator_classes.count(token.text) > 0;
        case TokenKind::Identifier:
            return sig.includes_identifiers;
        case TokenKind::NumberLiteral:
        case TokenKind::StringLiteral:
            return sig.includes_literals;
        case TokenKind::Directive:
            return true;
        case TokenKind::Comment:
        case TokenKind::Whitespace:
            return false;
    }
    return false;
}

std::string FragmentedCode::source() const {
    std::string out;
    for (const auto& f : fragments) out += f.text;
    return out;
}

FragmentedCode segment(std::string_view source, const SignificantTokenSet& sig) {
    const std::vector<Token> tokens = lex(source);

    FragmentedCode fc;
    std::size_t frag_begin = 0;
    const Token* core = nullptr;  // significant token of the pending fragment

    auto flush = [&](std::size_t upto) {
        if (upto == frag_begin) return;
        Fragment f;
        f.text = std::string(source.substr(frag_begin, upto - frag_begin));
        f.kind = core ? fragment_kind_for(*core) : FragmentKind::Trivia;
        f.begin = frag_begin;
        f.end = upto;
        fc.fragments.push_back(std::move(f));
        frag_begin = upto;
        core = nullptr;
    };

    for (const Token& t : tokens) {
        if (t.is_trivia()) continue;
        if (core) flush(t.begin);  // trivia after the core stays in the old fragment
        if (is_significant(t, sig)) core = &t;
    }
    flush(source.size());
    return fc;
}

}  // namespace vsd
