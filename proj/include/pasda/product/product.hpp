#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pasda/minilang/ast.hpp"
#include "pasda/sym/expr.hpp"

namespace pasda::product {

// Symbolic counterpart of minilang::Effect.
struct SymEffect {
  enum class Kind { Return, Thrown };
  Kind kind = Kind::Return;
  sym::ExprPtr value;      // Return only
  std::string error_name;  // Thrown only

  static SymEffect returned(sym::ExprPtr v) { return SymEffect{Kind::Return, std::move(v), {}}; }
  static SymEffect thrown(std::string name) { return SymEffect{Kind::Thrown, nullptr, std::move(name)}; }
};

std::string to_string(const SymEffect& e);

struct SignatureMismatch : std::runtime_error {
  explicit SignatureMismatch(const std::string& msg)
      : std::runtime_error("signature mismatch: " + msg) {}
};

enum class CompareMode { ErrorKindThenValue };

// The composed analysis unit: both versions run on shared symbolic inputs;
// their effects are compared error kind first, then value. Bodies are held
// with user calls statically inlined, so the engine sees call-free code.
struct ProductUnit {
  minilang::FunctionDef v1;
  minilang::FunctionDef v2;
  std::vector<minilang::Param> shared_params;  // names from v1
  minilang::Ty return_ty = minilang::Ty::Int;
  CompareMode compare_mode = CompareMode::ErrorKindThenValue;
};

// Inlines every user-function call (no recursion exists, so expansion
// terminates). Calls in while/for conditions or for steps are not supported
// and raise std::runtime_error.
minilang::FunctionDef inline_calls(const minilang::FunctionDef& fn, const minilang::Program& prog);

// Validates assumption (i): same arity, parameter types and return type.
ProductUnit build_product(const minilang::FunctionDef& v1, const minilang::Program& prog1,
                          const minilang::FunctionDef& v2, const minilang::Program& prog2);

}  // namespace pasda::product
