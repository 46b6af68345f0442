// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "vsd/token.hpp"

namespace vsd {

// Lexes Verilog source into a total token stream: every input byte lands in
// exactly one token, in order, including whitespace and comments. Based
// literals (4'b0010), strings, comments and compiler directives are single
// tokens. Throws LexError on unterminated strings/block comments and on
// bytes that start no token.
std::vector<Token> lex(std::string_view source);

bool is_verilog_keyword(std::string_view word);

}  // namespace vsd
