// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "vsd/token.hpp"

namespace vsd {

enum class NodeSymbol {
    Leaf,
    SourceText,
    ModuleDecl,
    ParamPortList,
    PortList,
    Port,
    PortDecl,
    NetDecl,
    ParamDecl,
    Range,
    ContinuousAssign,
    AlwaysBlock,
    InitialBlock,
    EventControl,
    EventExpr,
    DelayControl,
    SeqBlock,
    IfStmt,
    CaseStmt,
    CaseItem,
    ForStmt,
    WhileStmt,
    RepeatStmt,
    ForeverStmt,
    BlockingAssign,
    NonblockingAssign,
    TaskCall,
    NullStmt,
    Instantiation,
    PortConnection,
    DirectiveItem,
    CondExpr,
    BinaryExpr,
    UnaryExpr,
    Concat,
    Replication,
    IndexExpr,
    MemberRef,
    CallExpr,
    ParenExpr,
};

const char* node_symbol_name(NodeSymbol symbol);

// Full-fidelity syntax tree: every non-trivia token consumed by the parser
// appears as exactly one Leaf, and in-order leaf traversal reproduces the
// non-trivia token stream.
struct AstNode {
    NodeSymbol symbol = NodeSymbol::Leaf;
    std::vector<AstNode> children;
    std::optional<Token> token;  // set iff symbol == Leaf
};

struct Ast {
    AstNode root;
};

void collect_leaves(const AstNode& node, std::vector<const Token*>& out);
std::vector<const Token*> leaves(const Ast& ast);

// First leaf token under a node, or nullptr for an empty subtree.
const Token* head_token(const AstNode& node);

}  // namespace vsd
