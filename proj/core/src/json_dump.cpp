// SPDX-License-Identifier: Apache-2.0

#include "vsd/json_dump.hpp"

#include <json.hpp>

namespace vsd {

namespace {

nlohmann::ordered_json node_to_json(const AstNode& node) {
    nlohmann::ordered_json j;
    j["symbol"] = node_symbol_name(node.symbol);
    if (node.symbol == NodeSymbol::Leaf) {
        j["kind"] = token_kind_name(node.token->kind);
        j["text"] = node.token->text;
        j["span"] = {node.token->begin, node.token->end};
        return j;
    }
    nlohmann::ordered_json children = nlohmann::ordered_json::array();
    for (const AstNode& child : node.children) children.push_back(node_to_json(child));
    j["children"] = std::move(children);
    return j;
}

}  // namespace

std::string ast_to_json_string(const Ast& ast) {
    return node_to_json(ast.root).dump(2) + "\n";
}

std::string fragments_to_json_string(const FragmentedCode& code) {
    nlohmann::ordered_json frags = nlohmann::ordered_json::array();
    for (const Fragment& f : code.fragments) {
        nlohmann::ordered_json j;
        j["text"] = f.text;
        j["kind"] = fragment_kind_name(f.kind);
        j["span"] = {f.begin, f.end};
        frags.push_back(std::move(j));
    }
    nlohmann::ordered_json root;
    root["fragments"] = std::move(frags);
    return root.dump(2) + "\n";
}

}  // namespace vsd
