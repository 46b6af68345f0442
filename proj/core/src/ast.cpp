// SPDX-License-Identifier: Apache-2.0

#include "vsd/ast.hpp"

namespace vsd {

const char* node_symbol_name(NodeSymbol symbol) {
    switch (symbol) {
        case NodeSymbol::Leaf: return "Leaf";
        case NodeSymbol::SourceText: return "SourceText";
        case NodeSymbol::ModuleDecl: return "ModuleDecl";
        case NodeSymbol::ParamPortList: return "ParamPortList";
        case NodeSymbol::PortList: return "PortList";
        case NodeSymbol::Port: return "Port";
        case NodeSymbol::PortDecl: return "PortDecl";
        case NodeSymbol::NetDecl: return "NetDecl";
        case NodeSymbol::ParamDecl: return "ParamDecl";
        case NodeSymbol::Range: return "Range";
        case NodeSymbol::ContinuousAssign: return "ContinuousAssign";
        case NodeSymbol::AlwaysBlock: return "AlwaysBlock";
        case NodeSymbol::InitialBlock: return "InitialBlock";
        case NodeSymbol::EventControl: return "EventControl";
        case NodeSymbol::EventExpr: return "EventExpr";
        case NodeSymbol::DelayControl: return "DelayControl";
        case NodeSymbol::SeqBlock: return "SeqBlock";
        case NodeSymbol::IfStmt: return "IfStmt";
        case NodeSymbol::CaseStmt: return "CaseStmt";
        case NodeSymbol::CaseItem: return "CaseItem";
        case NodeSymbol::ForStmt: return "ForStmt";
        case NodeSymbol::WhileStmt: return "WhileStmt";
        case NodeSymbol::RepeatStmt: return "RepeatStmt";
        case NodeSymbol::ForeverStmt: return "ForeverStmt";
        case NodeSymbol::BlockingAssign: return "BlockingAssign";
        case NodeSymbol::NonblockingAssign: return "NonblockingAssign";
        case NodeSymbol::TaskCall: return "TaskCall";
        case NodeSymbol::NullStmt: return "NullStmt";
        case NodeSymbol::Instantiation: return "Instantiation";
        case NodeSymbol::PortConnection: return "PortConnection";
        case NodeSymbol::DirectiveItem: return "DirectiveItem";
        case NodeSymbol::CondExpr: return "CondExpr";
        case NodeSymbol::BinaryExpr: return "BinaryExpr";
        case NodeSymbol::UnaryExpr: return "UnaryExpr";
        case NodeSymbol::Concat: return "Concat";
        case NodeSymbol::Replication: return "Replication";
        case NodeSymbol::IndexExpr: return "IndexExpr";
        case NodeSymbol::MemberRef: return "MemberRef";
        case NodeSymbol::CallExpr: return "CallExpr";
        case NodeSymbol::ParenExpr: return "ParenExpr";
    }
    return "?";
}

void collect_leaves(const AstNode& node, std::vector<const Token*>& out) {
    if (node.symbol == NodeSymbol::Leaf) {
        out.push_back(&*node.token);
        return;
    }
    for (const auto& child : node.children) collect_leaves(child, out);
}

std::vector<const Token*> leaves(const Ast& ast) {
    std::vector<const Token*> out;
    collect_leaves(ast.root, out);
    return out;
}

const Token* head_token(const AstNode& node) {
    if (node.symbol == NodeSymbol::Leaf) return &*node.token;
    for (const auto& child : node.children) {
        if (const Token* t = head_token(child)) return t;
    }
    return nullptr;
}

}  // namespace vsd
