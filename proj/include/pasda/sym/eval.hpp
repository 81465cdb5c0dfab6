#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pasda/sym/expr.hpp"

namespace pasda::sym {

// Concrete scalar. Int arithmetic wraps at 64 bits, matching the interpreter.
struct Value {
  Type type = Type::Int;
  std::int64_t i = 0;
  double r = 0.0;

  static Value of_int(std::int64_t v) { return Value{Type::Int, v, 0.0}; }
  static Value of_real(double v) { return Value{Type::Real, 0, v}; }
  double as_real() const { return type == Type::Real ? r : static_cast<double>(i); }
  bool operator==(const Value& o) const {
    if (type != o.type) return false;
    return type == Type::Int ? i == o.i : r == o.r;
  }
  bool operator<(const Value& o) const {
    if (type != o.type) return type < o.type;
    return type == Type::Int ? i < o.i : r < o.r;
  }
};

std::string to_string(const Value& v);

struct UifKey {
  int id = 0;
  std::vector<Value> args;
  bool operator<(const UifKey& o) const {
    if (id != o.id) return id < o.id;
    return args < o.args;
  }
};

// Concrete assignment of input symbols plus value tables for UIF
// applications, keyed by (uif id, concrete argument tuple).
struct Assignment {
  std::map<std::string, Value> vars;
  std::map<UifKey, Value> uif_tables;
};

// Evaluates to nullopt when a symbol or UIF table entry is missing, or when
// an int division/modulo by zero is hit (the caller decides what that means).
std::optional<Value> eval(const ExprPtr& e, const Assignment& a);
std::optional<bool> eval(const FormulaPtr& f, const Assignment& a);

Value eval_intrinsic(Intrinsic fn, const std::vector<Value>& args);

}  // namespace pasda::sym
