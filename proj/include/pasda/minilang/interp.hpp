#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pasda/minilang/ast.hpp"
#include "pasda/minilang/errors.hpp"
#include "pasda/sym/eval.hpp"

namespace pasda::minilang {

// Observable outcome of one execution: a returned scalar or a raised error.
struct Effect {
  enum class Kind { Return, Thrown };
  Kind kind = Kind::Return;
  sym::Value value;        // Return only
  std::string error_name;  // Thrown only

  static Effect returned(sym::Value v) { return Effect{Kind::Return, v, {}}; }
  static Effect thrown(std::string name) { return Effect{Kind::Thrown, {}, std::move(name)}; }

  bool operator==(const Effect& o) const {
    if (kind != o.kind) return false;
    return kind == Kind::Return ? value == o.value : error_name == o.error_name;
  }
};

std::string to_string(const Effect& e);

using ConcreteInput = std::vector<sym::Value>;

struct InterpOptions {
  std::int64_t fuel = 1000000;  // statement budget
};

// Deterministic concrete evaluation; the ground-truth oracle for the
// analysis. Division or modulo by zero raises the DivByZero effect; an
// explicit `fail E` raises E. Throws FuelExhausted when the step budget runs
// out (an interpreter error, not a program effect).
Effect interpret(const FunctionDef& fn, const ConcreteInput& input, const Program& prog,
                 const InterpOptions& opts = {});

}  // namespace pasda::minilang
