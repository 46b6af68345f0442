// SPDX-License-Identifier: Apache-2.0

#include "vsd/parser.hpp"

#include <unordered_set>
#include <utility>

#include "vsd/lexer.hpp"

namespace vsd {

namespace {

bool is_net_type(std::string_view w) {
    static const std::unordered_set<std::string_view> kNetTypes = {
        "wire", "reg", "integer", "real", "realtime", "time", "genvar", "event",
        "tri", "tri0", "tri1", "triand", "trior", "trireg",
        "supply0", "supply1", "wand", "wor",
    };
    return kNetTypes.count(w) > 0;
}

bool is_gate_type(std::string_view w) {
    static const std::unordered_set<std::string_view> kGates = {
        "and", "or", "not", "nand", "nor", "xor", "xnor",
        "buf", "bufif0", "bufif1", "notif0", "notif1",
        "pullup", "pulldown",
    };
    return kGates.count(w) > 0;
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) {
        for (const Token& t : tokens) {
            if (!t.is_trivia()) toks_.push_back(&t);
            end_ = t.end;
        }
    }

    Ast run() {
        AstNode root{NodeSymbol::SourceText, {}, std::nullopt};
        while (!eof()) {
            if (at(TokenKind::Directive)) {
                root.children.push_back(directive_item());
            } else if (at_kw("module") || at_kw("macromodule")) {
                root.children.push_back(module_decl());
            } else {
                fail("module declaration or directive expected");
            }
        }
        return Ast{std::move(root)};
    }

private:
    std::vector<const Token*> toks_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;  // byte length of the source, for EOF spans

    bool eof() const { return pos_ >= toks_.size(); }
    const Token& cur() const { return *toks_[pos_]; }

    bool at(TokenKind k) const { return !eof() && cur().kind == k; }
    bool at_text(TokenKind k, std::string_view text) const {
        return at(k) && cur().text == text;
    }
    bool at_kw(std::string_view w) const { return at_text(TokenKind::Keyword, w); }
    bool at_op(std::string_view w) const { return at_text(TokenKind::Operator, w); }
    bool at_punct(std::string_view w) const { return at_text(TokenKind::Punctuation, w); }

    [[noreturn]] void fail(const std::string& expected) const {
        if (eof()) throw SyntaxError(end_, end_, expected + ", got end of input");
        throw SyntaxError(cur().begin, cur().end, expected + ", got '" + cur().text + "'");
    }

    AstNode take() {
        AstNode leaf{NodeSymbol::Leaf, {}, *toks_[pos_]};
        pos_++;
        return leaf;
    }

    void eat(AstNode& parent) { parent.children.push_back(take()); }

    void expect_kw(AstNode& parent, std::string_view w) {
        if (!at_kw(w)) fail("'" + std::string(w) + "' expected");
        eat(parent);
    }
    void expect_punct(AstNode& parent, std::string_view w) {
        if (!at_punct(w)) fail("'" + std::string(w) + "' expected");
        eat(parent);
    }
    void expect_op(AstNode& parent, std::string_view w) {
        if (!at_op(w)) fail("'" + std::string(w) + "' expected");
        eat(parent);
    }
    void expect_ident(AstNode& parent) {
        if (!at(TokenKind::Identifier)) fail("identifier expected");
        eat(parent);
    }

    AstNode directive_item() {
        AstNode n{NodeSymbol::DirectiveItem, {}, std::nullopt};
        eat(n);
        return n;
    }

    // module name [#(params)] [(ports)] ; { item } endmodule
    AstNode module_decl() {
        AstNode n{NodeSymbol::ModuleDecl, {}, std::nullopt};
        eat(n);  // module / macromodule
        expect_ident(n);
        if (at_punct("#")) n.children.push_back(param_port_list());
        if (at_punct("(")) n.children.push_back(port_list());
        expect_punct(n, ";");
        while (!eof() && !at_kw("endmodule")) n.children.push_back(module_item());
        expect_kw(n, "endmodule");
        return n;
    }

    AstNode param_port_list() {
        AstNode n{NodeSymbol::ParamPortList, {}, std::nullopt};
        eat(n);  // #
        expect_punct(n, "(");
        if (!at_punct(")")) {
            while (true) {
                if (at_kw("parameter")) eat(n);
                if (at_kw("signed")) eat(n);
                if (at_punct("[")) n.children.push_back(range());
                expect_ident(n);
                expect_op(n, "=");
                n.children.push_back(expr());
                if (!at_punct(",")) break;
                eat(n);
            }
        }
        expect_punct(n, ")");
        return n;
    }

    AstNode port_list() {
        AstNode n{NodeSymbol::PortList, {}, std::nullopt};
        eat(n);  // (
        if (!at_punct(")")) {
            while (true) {
                n.children.push_back(port());
                if (!at_punct(",")) break;
                eat(n);
            }
        }
        expect_punct(n, ")");
        return n;
    }

    // ANSI declaration or a plain (non-ANSI) identifier
    AstNode port() {
        AstNode n{NodeSymbol::Port, {}, std::nullopt};
        if (at_kw("input") || at_kw("output") || at_kw("inout")) eat(n);
        if (!eof() && at(TokenKind::Keyword) && is_net_type(cur().text)) eat(n);
        if (at_kw("signed")) eat(n);
        if (at_punct("[")) n.children.push_back(range());
        expect_ident(n);
        return n;
    }

    AstNode range() {
        AstNode n{NodeSymbol::Range, {}, std::nullopt};
        eat(n);  // [
        n.children.push_back(expr());
        if (at_punct(":") || at_op("+:") || at_op("-:")) {
            eat(n);
            n.children.push_back(expr());
        }
        expect_punct(n, "]");
        return n;
    }

    AstNode module_item() {
        if (at(TokenKind::Directive)) return directive_item();
        if (at_kw("input") || at_kw("output") || at_kw("inout")) return port_decl();
        if (at_kw("parameter") || at_kw("localparam")) return param_decl();
        if (at_kw("assign")) return continuous_assign();
        if (at_kw("always")) return always_block();
        if (at_kw("initial")) return initial_block();
        if (at(TokenKind::Keyword) && is_net_type(cur().text)) return net_decl();
        if (at(TokenKind::Keyword) && is_gate_type(cur().text)) return instantiation();
        if (at(TokenKind::Identifier)) return instantiation();
        fail("module item expected");
    }

    AstNode port_decl() {
        AstNode n{NodeSymbol::PortDecl, {}, std::nullopt};
        eat(n);  // direction
        if (!eof() && at(TokenKind::Keyword) && is_net_type(cur().text)) eat(n);
        if (at_kw("signed")) eat(n);
        if (at_punct("[")) n.children.push_back(range());
        expect_ident(n);
        while (at_punct(",")) {
            eat(n);
            expect_ident(n);
        }
        expect_punct(n, ";");
        return n;
    }

    AstNode net_decl() {
        AstNode n{NodeSymbol::NetDecl, {}, std::nullopt};
        eat(n);  // net type
        if (at_kw("signed")) eat(n);
        if (at_punct("[")) n.children.push_back(range());
        while (true) {
            expect_ident(n);
            if (at_punct("[")) n.children.push_back(range());  // array dims
            if (at_op("=")) {
                eat(n);
                n.children.push_back(expr());
            }
            if (!at_punct(",")) break;
            eat(n);
        }
        expect_punct(n, ";");
        return n;
    }

    AstNode param_decl() {
        AstNode n{NodeSymbol::ParamDecl, {}, std::nullopt};
        eat(n);  // parameter / localparam
        if (at_kw("signed")) eat(n);
        if (at_punct("[")) n.children.push_back(range());
        while (true) {
            expect_ident(n);
            expect_op(n, "=");
            n.children.push_back(expr());
            if (!at_punct(",")) break;
            eat(n);
        }
        expect_punct(n, ";");
        return n;
    }

    AstNode continuous_assign() {
        AstNode n{NodeSymbol::ContinuousAssign, {}, std::nullopt};
        eat(n);  // assign
        if (at_punct("#")) n.children.push_back(delay_value());
        while (true) {
            n.children.push_back(lvalue());
            expect_op(n, "=");
            n.children.push_back(expr());
            if (!at_punct(",")) break;
            eat(n);
        }
        expect_punct(n, ";");
        return n;
    }

    AstNode always_block() {
        AstNode n{NodeSymbol::AlwaysBlock, {}, std::nullopt};
        eat(n);  // always
        n.children.push_back(statement());
        return n;
    }

    AstNode initial_block() {
        AstNode n{NodeSymbol::InitialBlock, {}, std::nullopt};
        eat(n);  // initial
        n.children.push_back(statement());
        return n;
    }

    // '#' (number | identifier | '(' expr ')')
    AstNode delay_value() {
        AstNode n{NodeSymbol::DelayControl, {}, std::nullopt};
        eat(n);  // #
        if (at(TokenKind::NumberLiteral) || at(TokenKind::Identifier)) {
            eat(n);
        } else if (at_punct("(")) {
            eat(n);
            n.children.push_back(expr());
            expect_punct(n, ")");
        } else {
            fail("delay value expected");
        }
        return n;
    }

    // '@' ('*' | '(' '*' ')' | '(' event_expr { or|, event_expr } ')' | identifier)
    AstNode event_control() {
        AstNode n{NodeSymbol::EventControl, {}, std::nullopt};
        eat(n);  // @
        if (at_op("*")) {
            eat(n);
            return n;
        }
        if (at(TokenKind::Identifier)) {
            eat(n);
            return n;
        }
        expect_punct(n, "(");
        if (at_op("*")) {
            eat(n);
        } else {
            n.children.push_back(event_expr());
            while (at_kw("or") || at_punct(",")) {
                eat(n);
                n.children.push_back(event_expr());
            }
        }
        expect_punct(n, ")");
        return n;
    }

    AstNode event_expr() {
        AstNode n{NodeSymbol::EventExpr, {}, std::nullopt};
        if (at_kw("posedge") || at_kw("negedge") || at_kw("edge")) eat(n);
        n.children.push_back(expr());
        return n;
    }

    AstNode statement() {
        if (at_kw("begin")) return seq_block();
        if (at_kw("if")) return if_stmt();
        if (at_kw("case") || at_kw("casez") || at_kw("casex")) return case_stmt();
        if (at_kw("for")) return for_stmt();
        if (at_kw("while")) return while_stmt();
        if (at_kw("repeat")) return repeat_stmt();
        if (at_kw("forever")) return forever_stmt();
        if (at_punct("#")) {
            AstNode n = delay_value();
            n.children.push_back(statement());
            return n;
        }
        if (at_punct("@")) {
            AstNode n = event_control();
            n.children.push_back(statement());
            return n;
        }
        if (at_punct(";")) {
            AstNode n{NodeSymbol::NullStmt, {}, std::nullopt};
            eat(n);
            return n;
        }
        if (at(TokenKind::Identifier) || at_punct("{")) return assignment_or_call();
        fail("statement expected");
    }

    AstNode seq_block() {
        AstNode n{NodeSymbol::SeqBlock, {}, std::nullopt};
        eat(n);  // begin
        if (at_punct(":")) {
            eat(n);
            expect_ident(n);
        }
        while (!eof() && !at_kw("end")) n.children.push_back(statement());
        expect_kw(n, "end");
        return n;
    }

    AstNode if_stmt() {
        AstNode n{NodeSymbol::IfStmt, {}, std::nullopt};
        eat(n);  // if
        expect_punct(n, "(");
        n.children.push_back(expr());
        expect_punct(n, ")");
        n.children.push_back(statement());
        if (at_kw("else")) {
            eat(n);
            n.children.push_back(statement());
        }
        return n;
    }

    AstNode case_stmt() {
        AstNode n{NodeSymbol::CaseStmt, {}, std::nullopt};
        eat(n);  // case / casez / casex
        expect_punct(n, "(");
        n.children.push_back(expr());
        expect_punct(n, ")");
        while (!eof() && !at_kw("endcase")) n.children.push_back(case_item());
        expect_kw(n, "endcase");
        return n;
    }

    AstNode case_item() {
        AstNode n{NodeSymbol::CaseItem, {}, std::nullopt};
        if (at_kw("default")) {
            eat(n);
            if (at_punct(":")) eat(n);
        } else {
            n.children.push_back(expr());
            while (at_punct(",")) {
                eat(n);
                n.children.push_back(expr());
            }
            expect_punct(n, ":");
        }
        n.children.push_back(statement());
        return n;
    }

    AstNode for_stmt() {
        AstNode n{NodeSymbol::ForStmt, {}, std::nullopt};
        eat(n);  // for
        expect_punct(n, "(");
        n.children.push_back(plain_assignment());
        expect_punct(n, ";");
        n.children.push_back(expr());
        expect_punct(n, ";");
        n.children.push_back(plain_assignment());
        expect_punct(n, ")");
        n.children.push_back(statement());
        return n;
    }

    AstNode while_stmt() {
        AstNode n{NodeSymbol::WhileStmt, {}, std::nullopt};
        eat(n);  // while
        expect_punct(n, "(");
        n.children.push_back(expr());
        expect_punct(n, ")");
        n.children.push_back(statement());
        return n;
    }

    AstNode repeat_stmt() {
        AstNode n{NodeSymbol::RepeatStmt, {}, std::nullopt};
        eat(n);  // repeat
        expect_punct(n, "(");
        n.children.push_back(expr());
        expect_punct(n, ")");
        n.children.push_back(statement());
        return n;
    }

    AstNode forever_stmt() {
        AstNode n{NodeSymbol::ForeverStmt, {}, std::nullopt};
        eat(n);  // forever
        n.children.push_back(statement());
        return n;
    }

    // lvalue '=' expr, without the trailing ';' (for-loop header slots)
    AstNode plain_assignment() {
        AstNode n{NodeSymbol::BlockingAssign, {}, std::nullopt};
        n.children.push_back(lvalue());
        expect_op(n, "=");
        n.children.push_back(expr());
        return n;
    }

    // blocking/non-blocking assignment, task enable, or system task call
    AstNode assignment_or_call() {
        AstNode target = lvalue();
        if (at_op("=") || at_op("<=")) {
            bool blocking = at_op("=");
            AstNode n{blocking ? NodeSymbol::BlockingAssign : NodeSymbol::NonblockingAssign,
                      {}, std::nullopt};
            n.children.push_back(std::move(target));
            eat(n);  // = or <=
            if (at_punct("#")) n.children.push_back(delay_value());
            n.children.push_back(expr());
            expect_punct(n, ";");
            return n;
        }
        if (at_punct("(") || at_punct(";")) {
            AstNode n{NodeSymbol::TaskCall, {}, std::nullopt};
            n.children.push_back(std::move(target));
            if (at_punct("(")) {
                eat(n);
                if (!at_punct(")")) {
                    n.children.push_back(expr());
                    while (at_punct(",")) {
                        eat(n);
                        n.children.push_back(expr());
                    }
                }
                expect_punct(n, ")");
            }
            expect_punct(n, ";");
            return n;
        }
        fail("'=' or '<=' expected");
    }

    // identifier with select/member suffixes, or a concatenation of lvalues
    AstNode lvalue() {
        if (at_punct("{")) {
            AstNode n{NodeSymbol::Concat, {}, std::nullopt};
            eat(n);
            n.children.push_back(lvalue());
            while (at_punct(",")) {
                eat(n);
                n.children.push_back(lvalue());
            }
            expect_punct(n, "}");
            return n;
        }
        if (!at(TokenKind::Identifier)) fail("lvalue expected");
        AstNode base = take();
        return suffixes(std::move(base));
    }

    AstNode suffixes(AstNode base) {
        while (true) {
            if (at_punct("[")) {
                AstNode n{NodeSymbol::IndexExpr, {}, std::nullopt};
                n.children.push_back(std::move(base));
                n.children.push_back(range());
                base = std::move(n);
            } else if (at_punct(".")) {
                AstNode n{NodeSymbol::MemberRef, {}, std::nullopt};
                n.children.push_back(std::move(base));
                eat(n);
                expect_ident(n);
                base = std::move(n);
            } else {
                return base;
            }
        }
    }

    // modname [#(overrides)] inst [range] ( connections ) ;
    // Gate primitives take the same shape with an optional instance name.
    AstNode instantiation() {
        AstNode n{NodeSymbol::Instantiation, {}, std::nullopt};
        eat(n);  // module or gate name
        if (at_punct("#")) n.children.push_back(param_override());
        if (at(TokenKind::Identifier)) eat(n);
        if (at_punct("[")) n.children.push_back(range());
        expect_punct(n, "(");
        if (!at_punct(")")) {
            n.children.push_back(port_connection());
            while (at_punct(",")) {
                eat(n);
                n.children.push_back(port_connection());
            }
        }
        expect_punct(n, ")");
        expect_punct(n, ";");
        return n;
    }

    AstNode param_override() {
        AstNode n{NodeSymbol::ParamPortList, {}, std::nullopt};
        eat(n);  // #
        expect_punct(n, "(");
        if (!at_punct(")")) {
            n.children.push_back(port_connection());
            while (at_punct(",")) {
                eat(n);
                n.children.push_back(port_connection());
            }
        }
        expect_punct(n, ")");
        return n;
    }

    AstNode port_connection() {
        AstNode n{NodeSymbol::PortConnection, {}, std::nullopt};
        if (at_punct(".")) {
            eat(n);
            expect_ident(n);
            expect_punct(n, "(");
            if (!at_punct(")")) n.children.push_back(expr());
            expect_punct(n, ")");
            return n;
        }
        n.children.push_back(expr());
        return n;
    }

    // --- expressions, standard precedence ---

    AstNode expr() { return cond_expr(); }

    AstNode cond_expr() {
        AstNode e = binary_expr(0);
        if (at_op("?")) {
            AstNode n{NodeSymbol::CondExpr, {}, std::nullopt};
            n.children.push_back(std::move(e));
            eat(n);  // ?
            n.children.push_back(expr());
            expect_punct(n, ":");
            n.children.push_back(cond_expr());
            return n;
        }
        return e;
    }

    static const std::vector<std::vector<std::string_view>>& binary_levels() {
        static const std::vector<std::vector<std::string_view>> kLevels = {
            {"||"},
            {"&&"},
            {"|"},
            {"^", "^~", "~^"},
            {"&"},
            {"==", "!=", "===", "!=="},
            {"<", "<=", ">", ">="},
            {"<<", ">>", "<<<", ">>>"},
            {"+", "-"},
            {"*", "/", "%"},
            {"**"},
        };
        return kLevels;
    }

    AstNode binary_expr(std::size_t level) {
        const auto& levels = binary_levels();
        if (level >= levels.size()) return unary_expr();
        AstNode lhs = binary_expr(level + 1);
        while (!eof() && cur().kind == TokenKind::Operator &&
               std::find(levels[level].begin(), levels[level].end(), cur().text) !=
                   levels[level].end()) {
            AstNode n{NodeSymbol::BinaryExpr, {}, std::nullopt};
            n.children.push_back(std::move(lhs));
            eat(n);
            n.children.push_back(binary_expr(level + 1));
            lhs = std::move(n);
        }
        return lhs;
    }

    AstNode unary_expr() {
        static const std::unordered_set<std::string_view> kUnary = {
            "!", "~", "&", "~&", "|", "~|", "^", "~^", "^~", "+", "-"};
        if (at(TokenKind::Operator) && kUnary.count(cur().text)) {
            AstNode n{NodeSymbol::UnaryExpr, {}, std::nullopt};
            eat(n);
            n.children.push_back(unary_expr());
            return n;
        }
        return primary();
    }

    AstNode primary() {
        if (at(TokenKind::NumberLiteral) || at(TokenKind::StringLiteral)) return take();
        if (at_punct("(")) {
            AstNode n{NodeSymbol::ParenExpr, {}, std::nullopt};
            eat(n);
            n.children.push_back(expr());
            expect_punct(n, ")");
            return n;
        }
        if (at_punct("{")) return concat_or_replication();
        if (at(TokenKind::Identifier)) {
            AstNode base = take();
            if (at_punct("(")) {
                AstNode n{NodeSymbol::CallExpr, {}, std::nullopt};
                n.children.push_back(std::move(base));
                eat(n);
                if (!at_punct(")")) {
                    n.children.push_back(expr());
                    while (at_punct(",")) {
                        eat(n);
                        n.children.push_back(expr());
                    }
                }
                expect_punct(n, ")");
                return n;
            }
            return suffixes(std::move(base));
        }
        fail("expression expected");
    }

    AstNode concat_or_replication() {
        AstNode n{NodeSymbol::Concat, {}, std::nullopt};
        eat(n);  // {
        AstNode first = expr();
        if (at_punct("{")) {
            n.symbol = NodeSymbol::Replication;
            n.children.push_back(std::move(first));
            eat(n);  // inner {
            n.children.push_back(expr());
            while (at_punct(",")) {
                eat(n);
                n.children.push_back(expr());
            }
            expect_punct(n, "}");
            expect_punct(n, "}");
            return n;
        }
        n.children.push_back(std::move(first));
        while (at_punct(",")) {
            eat(n);
            n.children.push_back(expr());
        }
        expect_punct(n, "}");
        return n;
    }
};

}  // namespace

Ast parse(const std::vector<Token>& tokens) {
    return Parser(tokens).run();
}

SyntaxCheckResult syntax_check(std::string_view source) {
    SyntaxCheckResult result;
    try {
        parse(lex(source));
        result.ok = true;
    } catch (const LexError& e) {
        result.ok = false;
        result.diagnostics.push_back({e.offset(), e.offset(), e.message()});
    } catch (const SyntaxError& e) {
        result.ok = false;
        result.diagnostics.push_back({e.begin(), e.end(), e.expected()});
    }
    return result;
}

}  // namespace vsd
