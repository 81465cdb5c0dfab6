#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pasda/sym/expr.hpp"

namespace pasda::minilang {

// Static expression types. Bool appears only in conditions; declared
// variables, parameters and returns are scalar (int/real).
enum class Ty { Int, Real, Bool };

const char* ty_name(Ty t);

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Kind { IntLit, RealLit, Var, Arith, Cmp, Bool, Not, Neg, Call, Uif };
  enum class BoolOp { And, Or };

  Kind kind;
  Ty ty = Ty::Int;  // filled by the checker
  int line = 0, col = 0;

  std::int64_t int_val = 0;
  double real_val = 0.0;
  std::string name;                          // Var, Call callee
  sym::BinOp arith = sym::BinOp::Add;        // Arith
  sym::CmpOp cmp = sym::CmpOp::Eq;           // Cmp
  BoolOp bop = BoolOp::And;                  // Bool
  std::optional<sym::Intrinsic> intrinsic;   // Call: set when callee is intrinsic
  int callee_index = -1;                     // Call: user function index in Program
  int uif_id = 0;                            // Uif (introduced by abstraction)
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
  enum class Kind { Let, Assign, If, While, For, Return, Fail };

  Kind kind;
  int line = 0;
  int id = -1;  // preorder id within the enclosing function

  // Let / Assign
  std::string var;
  std::optional<Ty> declared_ty;  // Let only
  ExprPtr value;
  bool is_compound = false;            // Assign: x op= e
  sym::BinOp compound_op = sym::BinOp::Add;
  bool inline_marker = false;  // Let synthesized at the start of an inlined call

  // If / While / For
  ExprPtr cond;                   // absent For condition means true
  std::vector<StmtPtr> body;      // then-branch / loop body
  std::vector<StmtPtr> else_body; // If only
  StmtPtr init;                   // For
  StmtPtr step;                   // For

  // Return
  // (uses `value`)

  // Fail
  std::string error_name;
};

struct Param {
  std::string name;
  Ty ty;
};

struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  Ty return_ty = Ty::Int;
  std::vector<StmtPtr> body;
  int line = 0;
  int stmt_count = 0;  // number of statements (preorder ids 0..stmt_count-1)
};

struct Program {
  std::vector<FunctionDef> functions;

  const FunctionDef* find(const std::string& name) const {
    for (const auto& f : functions) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }
};

// Structural equality, ignoring source positions.
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);
bool structurally_equal(const StmtPtr& a, const StmtPtr& b);
bool structurally_equal(const FunctionDef& a, const FunctionDef& b);

// Deep copy with fresh nodes (ids and lines preserved).
StmtPtr clone_stmt(const StmtPtr& s);
FunctionDef clone_function(const FunctionDef& f);

}  // namespace pasda::minilang
