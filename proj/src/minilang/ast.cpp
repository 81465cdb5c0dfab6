#include "pasda/minilang/ast.hpp"

namespace pasda::minilang {

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == nullptr || b == nullptr) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::IntLit:
      if (a->int_val != b->int_val) return false;
      break;
    case Expr::Kind::RealLit:
      if (a->real_val != b->real_val) return false;
      break;
    case Expr::Kind::Var:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Arith:
      if (a->arith != b->arith) return false;
      break;
    case Expr::Kind::Cmp:
      if (a->cmp != b->cmp) return false;
      break;
    case Expr::Kind::Bool:
      if (a->bop != b->bop) return false;
      break;
    case Expr::Kind::Call:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Uif:
      if (a->uif_id != b->uif_id) return false;
      break;
    default: break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

namespace {

bool blocks_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!structurally_equal(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool structurally_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == nullptr || b == nullptr) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Stmt::Kind::Let:
      return a->var == b->var && a->declared_ty == b->declared_ty &&
             structurally_equal(a->value, b->value);
    case Stmt::Kind::Assign:
      return a->var == b->var && a->is_compound == b->is_compound &&
             (!a->is_compound || a->compound_op == b->compound_op) &&
             structurally_equal(a->value, b->value);
    case Stmt::Kind::If:
      return structurally_equal(a->cond, b->cond) && blocks_equal(a->body, b->body) &&
             blocks_equal(a->else_body, b->else_body);
    case Stmt::Kind::While:
      return structurally_equal(a->cond, b->cond) && blocks_equal(a->body, b->body);
    case Stmt::Kind::For:
      return structurally_equal(a->init, b->init) && structurally_equal(a->cond, b->cond) &&
             structurally_equal(a->step, b->step) && blocks_equal(a->body, b->body);
    case Stmt::Kind::Return: return structurally_equal(a->value, b->value);
    case Stmt::Kind::Fail: return a->error_name == b->error_name;
  }
  return false;
}

bool structurally_equal(const FunctionDef& a, const FunctionDef& b) {
  if (a.name != b.name || a.return_ty != b.return_ty || a.params.size() != b.params.size()) {
    return false;
  }
  for (size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name || a.params[i].ty != b.params[i].ty) return false;
  }
  return blocks_equal(a.body, b.body);
}

namespace {

ExprPtr clone_expr(const ExprPtr& e) {
  if (!e) return nullptr;
  auto out = std::make_shared<Expr>(*e);
  for (auto& a : out->args) a = clone_expr(a);
  return out;
}

}  // namespace

StmtPtr clone_stmt(const StmtPtr& s) {
  if (!s) return nullptr;
  auto out = std::make_shared<Stmt>(*s);
  out->value = clone_expr(s->value);
  out->cond = clone_expr(s->cond);
  out->init = clone_stmt(s->init);
  out->step = clone_stmt(s->step);
  for (auto& st : out->body) st = clone_stmt(st);
  for (auto& st : out->else_body) st = clone_stmt(st);
  return out;
}

FunctionDef clone_function(const FunctionDef& f) {
  FunctionDef out = f;
  for (auto& s : out.body) s = clone_stmt(s);
  return out;
}

}  // namespace pasda::minilang
