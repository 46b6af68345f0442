// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsd/lexer.hpp"
#include "vsd/parser.hpp"

using namespace vsd;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const AstNode& only_module(const Ast& ast) {
    REQUIRE(ast.root.symbol == NodeSymbol::SourceText);
    REQUIRE(ast.root.children.size() == 1);
    return ast.root.children[0];
}

}  // namespace

TEST_CASE("smallest legal module") {
    const Ast ast = parse(lex("module m; endmodule"));
    const AstNode& mod = only_module(ast);
    CHECK(mod.symbol == NodeSymbol::ModuleDecl);
    std::size_t body_items = 0;
    for (const AstNode& child : mod.children)
        if (child.symbol != NodeSymbol::Leaf) body_items++;
    CHECK(body_items == 0);
}

TEST_CASE("assign without an expression is a syntax error at the offender") {
    const std::string src = "module m; assign endmodule";
    CHECK_THROWS_AS(parse(lex(src)), SyntaxError);
    try {
        parse(lex(src));
    } catch (const SyntaxError& e) {
        CHECK(src.substr(e.begin(), e.end() - e.begin()) == "endmodule");
        CHECK(e.expected().find("expected") != std::string::npos);
    }
}

TEST_CASE("missing endmodule is a syntax error") {
    const auto result = syntax_check("module m;");
    CHECK_FALSE(result.ok);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].message.find("endmodule") != std::string::npos);
}

TEST_CASE("in-order AST leaves equal the non-trivia token stream") {
    const std::string dir(VSD_FIXTURE_DIR);
    std::vector<std::string> files = {dir + "/counter.v"};
    for (const auto& entry : std::filesystem::directory_iterator(dir + "/corpus20"))
        files.push_back(entry.path().string());

    for (const auto& path : files) {
        const std::string src = read_file(path);
        const auto tokens = lex(src);
        Ast ast;
        try {
            ast = parse(tokens);
        } catch (const SyntaxError&) {
            continue;  // the planted syntax faults
        }
        std::vector<const Token*> stream;
        for (const Token& t : tokens)
            if (!t.is_trivia()) stream.push_back(&t);
        const auto leaf_tokens = leaves(ast);
        REQUIRE(leaf_tokens.size() == stream.size());
        for (std::size_t i = 0; i < stream.size(); i++) {
            CHECK(leaf_tokens[i]->text == stream[i]->text);
            CHECK(leaf_tokens[i]->begin == stream[i]->begin);
            CHECK(leaf_tokens[i]->kind == stream[i]->kind);
        }
    }
}

TEST_CASE("operator precedence shapes the expression tree") {
    const Ast ast = parse(lex("module m; assign y = a + b * c; endmodule"));
    const AstNode& mod = only_module(ast);
    const AstNode* assign = nullptr;
    for (const AstNode& child : mod.children)
        if (child.symbol == NodeSymbol::ContinuousAssign) assign = &child;
    REQUIRE(assign != nullptr);

    const AstNode* plus = nullptr;
    for (const AstNode& child : assign->children)
        if (child.symbol == NodeSymbol::BinaryExpr) plus = &child;
    REQUIRE(plus != nullptr);
    REQUIRE(plus->children.size() == 3);
    CHECK(plus->children[1].token->text == "+");
    CHECK(plus->children[2].symbol == NodeSymbol::BinaryExpr);
    CHECK(plus->children[2].children[1].token->text == "*");
}

TEST_CASE("subset coverage: declarations, control flow, instantiation") {
    const char* good[] = {
        "module m (a, b); input a; output b; assign b = a; endmodule",
        "module m; wire [3:0] w; reg r; integer i; endmodule",
        "module m #(parameter N = 4) (input [N-1:0] d, output q); assign q = |d; endmodule",
        "module m; always @(posedge clk or negedge rst_n) begin end endmodule",
        "module m; initial begin x = 0; $display(\"x=%d\", x); end endmodule",
        "module m; always begin #5 clk = ~clk; end endmodule",
        "module m; sub #(.W(4)) u0 (.a(x), .b(y)); endmodule",
        "module m; sub u1 (x, y, z); endmodule",
        "module m; and g0 (o, a, b); endmodule",
        "module m; always @(*) case (s) 2'b00: y = a; default: y = b; endcase endmodule",
        "module m; always @(*) begin : named for (i = 0; i < 4; i = i + 1) v[i] = 0; end endmodule",
        "module m; assign {c, s} = a + b; endmodule",
        "module m; assign y = {4{a}}; endmodule",
        "module m; assign y = a[3:0]; assign z = b[i+:2]; endmodule",
        "module m; `define X 1\n wire w; endmodule",
        "module m; assign y = cond ? (a << 2) : ~b; endmodule",
    };
    for (const char* src : good) {
        CAPTURE(src);
        CHECK(syntax_check(src).ok);
    }

    const char* bad[] = {
        "module m; wire a assign y = a; endmodule",
        "module m; always @() q <= d; endmodule",
        "module m; case endmodule",
        "module 42; endmodule",
        "wire w;",
    };
    for (const char* src : bad) {
        CAPTURE(src);
        CHECK_FALSE(syntax_check(src).ok);
    }
}

TEST_CASE("planted corpus: exactly 17 of 20 files pass the syntax check") {
    const std::string dir = std::string(VSD_FIXTURE_DIR) + "/corpus20";
    int ok = 0, total = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        total++;
        if (syntax_check(read_file(entry.path().string())).ok) ok++;
    }
    CHECK(total == 20);
    CHECK(ok == 17);
}
