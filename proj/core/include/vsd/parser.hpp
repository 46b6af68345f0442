// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "vsd/ast.hpp"
#include "vsd/token.hpp"

namespace vsd {

// Recursive-descent parser over a module-level Verilog-2005 subset:
// module declarations with ANSI or non-ANSI headers, port/net/reg/parameter
// declarations, continuous assigns, always/initial blocks with sensitivity
// lists, begin/end, if/else, case/casez/casex, for/while/repeat/forever,
// blocking and non-blocking assignments, module instantiations, and
// expressions with standard operator precedence. Compiler directives parse
// as opaque items. Throws SyntaxError.
Ast parse(const std::vector<Token>& tokens);

struct SyntaxDiagnostic {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string message;
};

struct SyntaxCheckResult {
    bool ok = false;
    std::vector<SyntaxDiagnostic> diagnostics;
};

// ok iff parse(lex(source)) succeeds; lex/parse failures become diagnostics.
SyntaxCheckResult syntax_check(std::string_view source);

}  // namespace vsd
