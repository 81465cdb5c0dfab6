#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pasda::sym {

enum class Type { Int, Real };

enum class BinOp { Add, Sub, Mul, Div, Mod };

// Intrinsic scalar functions of the analyzed language.
enum class Intrinsic { Tan, Sin, Cos, Sqrt, Log, Pow, Abs, Min, Max };

const char* intrinsic_name(Intrinsic f);
int intrinsic_arity(Intrinsic f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable symbolic value tree over input symbols, constants, arithmetic,
// intrinsic applications and uninterpreted-function applications.
struct Expr {
  enum class Kind { IntConst, RealConst, Symbol, Bin, Neg, IntToReal, Call, Uif };

  Kind kind;
  Type type;

  std::int64_t int_val = 0;   // IntConst
  double real_val = 0.0;      // RealConst
  std::string name;           // Symbol
  BinOp op = BinOp::Add;      // Bin
  Intrinsic fn = Intrinsic::Tan;  // Call
  int uif_id = 0;             // Uif
  std::vector<ExprPtr> args;  // Bin (2), Neg/IntToReal (1), Call, Uif
};

// Builders fold constant operands eagerly so that concrete-valued program
// state stays concrete during symbolic execution.
ExprPtr int_const(std::int64_t v);
ExprPtr real_const(double v);
ExprPtr symbol(const std::string& name, Type t);
ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr negate(ExprPtr e);
ExprPtr to_real(ExprPtr e);
ExprPtr call(Intrinsic fn, std::vector<ExprPtr> args);
ExprPtr uif_app(int uif_id, std::vector<ExprPtr> args, Type result_type);

bool is_const(const ExprPtr& e);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Total order used for canonical argument sorting and deterministic output.
int compare_expr(const ExprPtr& a, const ExprPtr& b);

std::string to_string(const ExprPtr& e);

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate_cmp(CmpOp op);
const char* cmp_op_text(CmpOp op);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Boolean constraint tree: comparisons over Expr combined with and/or/not.
struct Formula {
  enum class Kind { Const, Cmp, And, Or, Not };

  Kind kind;
  bool value = false;      // Const
  CmpOp op = CmpOp::Eq;    // Cmp
  ExprPtr lhs, rhs;        // Cmp
  std::vector<FormulaPtr> parts;  // And/Or (n-ary), Not (1)
};

FormulaPtr bool_const(bool v);
FormulaPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs);
FormulaPtr conj(std::vector<FormulaPtr> parts);
FormulaPtr disj(std::vector<FormulaPtr> parts);
FormulaPtr neg(FormulaPtr f);

bool is_true(const FormulaPtr& f);
bool is_false(const FormulaPtr& f);
bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

std::string to_string(const FormulaPtr& f);

// Flatten a formula into its top-level conjuncts (And nodes expanded).
std::vector<FormulaPtr> conjuncts(const FormulaPtr& f);

void collect_symbols(const ExprPtr& e, std::vector<ExprPtr>& out);
void collect_symbols(const FormulaPtr& f, std::vector<ExprPtr>& out);

bool contains_uif(const ExprPtr& e);
bool contains_uif(const FormulaPtr& f);

void collect_uif_apps(const ExprPtr& e, std::vector<ExprPtr>& out);
void collect_uif_apps(const FormulaPtr& f, std::vector<ExprPtr>& out);

}  // namespace pasda::sym
