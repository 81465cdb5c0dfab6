#pragma once

#include <string>

#include "pasda/minilang/ast.hpp"
#include "pasda/minilang/errors.hpp"

namespace pasda::minilang {

// Parses, resolves and type-checks a MiniLang source file. Line numbers are
// preserved on every statement. Throws SyntaxError, TypeError or
// RecursionError.
Program parse(const std::string& source);

bool is_intrinsic_name(const std::string& name);

}  // namespace pasda::minilang
