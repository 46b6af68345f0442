// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/ast.hpp"
#include "vsd/token.hpp"

namespace vsd {

// Construct keywords that are significant no matter what a particular AST
// contains. Callers can extend the set but never shrink it below this core.
const std::set<std::string>& mandatory_constructs();

struct SignificantTokenSet {
    std::set<std::string> keywords;
    std::set<std::string> operator_classes;
    bool includes_identifiers = true;
    bool includes_literals = true;
};

struct SignificantConfig {
    // Nonterminals whose head token is collected in addition to plain
    // keyword/operator leaves: declaration heads, control-flow heads and
    // sensitivity-list edges by default.
    std::set<NodeSymbol> critical_nonterminals = {
        NodeSymbol::ModuleDecl, NodeSymbol::PortDecl,   NodeSymbol::NetDecl,
        NodeSymbol::ParamDecl,  NodeSymbol::ContinuousAssign,
        NodeSymbol::AlwaysBlock, NodeSymbol::InitialBlock,
        NodeSymbol::IfStmt,     NodeSymbol::CaseStmt,   NodeSymbol::ForStmt,
        NodeSymbol::WhileStmt,  NodeSymbol::RepeatStmt, NodeSymbol::ForeverStmt,
        NodeSymbol::EventExpr,
    };
    std::set<std::string> supplemental;  // extra construct keywords, may be empty
};

SignificantTokenSet extract_significant_tokens(const Ast& ast,
                                               const SignificantConfig& cfg = {});

// A ready-made set covering the full keyword/operator surface of the lexer,
// for segmenting text that has no AST of its own (prompts, partial code).
SignificantTokenSet default_significant_set();

bool is_significant(const Token& token, const SignificantTokenSet& sig);

enum class FragmentKind { Keyword, Identifier, Operator, Literal, Punctuation, Trivia };

const char* fragment_kind_name(FragmentKind kind);

struct Fragment {
    std::string text;
    FragmentKind kind = FragmentKind::Trivia;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Ordered fragments whose concatenated text is byte-identical to the source.
struct FragmentedCode {
    std::vector<Fragment> fragments;

    std::string source() const;
};

// Cuts the source after every significant token; trailing whitespace and
// comments bind to the preceding fragment so each cut sits at a semantically
// complete point. Propagates LexError.
FragmentedCode segment(std::string_view source, const SignificantTokenSet& sig);

}  // namespace vsd
