// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "vsd/ast.hpp"
#include "vsd/syntax.hpp"

namespace vsd {

std::string ast_to_json_string(const Ast& ast);
std::string fragments_to_json_string(const FragmentedCode& code);

}  // namespace vsd
