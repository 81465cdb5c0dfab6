#pragma once

#include <string>

#include "pasda/minilang/ast.hpp"

namespace pasda::minilang {

std::string pretty_print(const Program& prog);
std::string pretty_print(const FunctionDef& fn);

std::string expr_text(const ExprPtr& e);

// One-line normalized statement text used for syntactic matching. Control
// statements yield only their header ("if (<cond>)", "while (<cond>)",
// "for (<init>; <cond>; <step>)"); bodies are matched separately.
std::string stmt_text(const StmtPtr& s);

}  // namespace pasda::minilang
