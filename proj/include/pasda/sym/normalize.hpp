#pragma once

#include <map>
#include <optional>
#include <string>

#include "pasda/sym/expr.hpp"
#include "pasda/sym/rational.hpp"

namespace pasda::sym {

struct ExprOrder {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const { return compare_expr(a, b) < 0; }
};

// Linear combination of canonical atoms with exact rational coefficients.
// Atoms are expressions the linearizer cannot see through: symbols, products
// of non-constants, truncating int division, mod, intrinsic and UIF
// applications (with canonicalized arguments). Int-to-real casts are
// transparent: the linear form models exact mathematical arithmetic.
struct LinForm {
  std::map<ExprPtr, Rational, ExprOrder> terms;
  Rational constant;

  bool is_constant() const { return terms.empty(); }
};

// Fails (nullopt) on coefficient overflow or non-finite real constants.
std::optional<LinForm> linearize(const ExprPtr& e);

// Canonical rewrite: arguments normalized, linear structure rebuilt in a
// deterministic shape. Used for atom identity, never for concrete replay.
ExprPtr canonicalize(const ExprPtr& e);

// Canonical comparison between two expressions; folds to a boolean constant
// when the difference is a decidable constant.
FormulaPtr normalize_cmp(CmpOp op, const ExprPtr& lhs, const ExprPtr& rhs);

// Equivalence-preserving simplification: negation normal form, canonical
// atoms, and/or unit laws, duplicate and complement elimination,
// single-variable interval emptiness, and contradiction detection by
// substituting var = const equalities into sibling conjuncts. A conjunct
// that concretizes to false collapses the conjunction; conjuncts that
// concretize to true are kept so transcendental content stays visible.
FormulaPtr simplify_formula(const FormulaPtr& f);

bool has_transcendental(const ExprPtr& e);
bool has_transcendental(const FormulaPtr& f);

// Per-variable interval implied by the top-level conjuncts (single-variable
// linear atoms only). For int variables the bounds are tightened to
// integers.
struct VarBounds {
  Type type = Type::Int;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

std::map<std::string, VarBounds> extract_bounds(const FormulaPtr& f);

// Replaces every application of the given UIF id (any arguments) by the
// given expression. Used by the refinement heuristics.
FormulaPtr replace_uif_apps(const FormulaPtr& f, int uif_id, const ExprPtr& replacement);
ExprPtr replace_uif_apps(const ExprPtr& e, int uif_id, const ExprPtr& replacement);

}  // namespace pasda::sym
