#include "pasda/product/product.hpp"

#include <map>

#include "pasda/sym/eval.hpp"

namespace pasda::product {

using minilang::Expr;
using minilang::ExprPtr;
using minilang::FunctionDef;
using minilang::Param;
using minilang::Program;
using minilang::Stmt;
using minilang::StmtPtr;
using minilang::Ty;

std::string to_string(const SymEffect& e) {
  if (e.kind == SymEffect::Kind::Return) return "RETURN " + sym::to_string(e.value);
  return "THROWN " + e.error_name;
}

namespace {

ExprPtr make_var(const std::string& name, Ty ty, int line) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = name;
  e->ty = ty;
  e->line = line;
  return e;
}

ExprPtr make_int_lit(std::int64_t v, int line) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::IntLit;
  e->int_val = v;
  e->ty = Ty::Int;
  e->line = line;
  return e;
}

ExprPtr make_zero(Ty ty, int line) {
  if (ty == Ty::Int) return make_int_lit(0, line);
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::RealLit;
  e->real_val = 0.0;
  e->ty = Ty::Real;
  e->line = line;
  return e;
}

StmtPtr make_let(const std::string& var, Ty ty, ExprPtr value, int line, bool marker = false) {
  auto s = std::make_shared<Stmt>();
  s->kind = Stmt::Kind::Let;
  s->var = var;
  s->declared_ty = ty;
  s->value = std::move(value);
  s->line = line;
  s->id = -1;
  s->inline_marker = marker;
  return s;
}

class Inliner {
public:
  explicit Inliner(const Program& prog) : prog_(prog) {}

  FunctionDef run(const FunctionDef& fn) {
    FunctionDef out = fn;
    out.body = rewrite_block(fn.body);
    return out;
  }

private:
  std::vector<StmtPtr> rewrite_block(const std::vector<StmtPtr>& block) {
    std::vector<StmtPtr> out;
    for (const auto& s : block) {
      auto pieces = rewrite_stmt(s);
      out.insert(out.end(), pieces.begin(), pieces.end());
    }
    return out;
  }

  std::vector<StmtPtr> rewrite_stmt(const StmtPtr& s) {
    std::vector<StmtPtr> prelude;
    auto out = std::make_shared<Stmt>(*s);
    switch (s->kind) {
      case Stmt::Kind::Let:
      case Stmt::Kind::Assign:
      case Stmt::Kind::Return:
        out->value = rewrite_expr(s->value, prelude, s->line);
        break;
      case Stmt::Kind::Fail: break;
      case Stmt::Kind::If:
        out->cond = rewrite_expr(s->cond, prelude, s->line);
        out->body = rewrite_block(s->body);
        out->else_body = rewrite_block(s->else_body);
        break;
      case Stmt::Kind::While:
        if (has_user_call(s->cond)) {
          throw std::runtime_error("user calls in while conditions are not supported");
        }
        out->body = rewrite_block(s->body);
        break;
      case Stmt::Kind::For: {
        if (has_user_call(s->cond) || (s->step && has_user_call(s->step->value))) {
          throw std::runtime_error("user calls in for conditions/steps are not supported");
        }
        if (s->init) {
          auto init_pieces = rewrite_stmt(s->init);
          if (init_pieces.size() > 1) {
            // hoist call expansions of the init out of the header
            prelude.insert(prelude.end(), init_pieces.begin(), init_pieces.end() - 1);
          }
          out->init = init_pieces.back();
        }
        out->body = rewrite_block(s->body);
        break;
      }
    }
    prelude.push_back(std::move(out));
    return prelude;
  }

  bool has_user_call(const ExprPtr& e) {
    if (!e) return false;
    if (e->kind == Expr::Kind::Call && !e->intrinsic) return true;
    for (const auto& a : e->args) {
      if (has_user_call(a)) return true;
    }
    return false;
  }

  ExprPtr rewrite_expr(const ExprPtr& e, std::vector<StmtPtr>& prelude, int line) {
    if (!e) return e;
    auto out = std::make_shared<Expr>(*e);
    for (auto& a : out->args) a = rewrite_expr(a, prelude, line);
    if (out->kind != Expr::Kind::Call || out->intrinsic) return out;
    const FunctionDef& callee = prog_.functions[out->callee_index];
    std::string ret_var = expand_call(callee, out->args, prelude, line);
    return make_var(ret_var, callee.return_ty, line);
  }

  // Splices the callee body into the prelude. Every callee return becomes a
  // guarded pair `ret = e; done = 1` and loop conditions are extended with
  // the done flag, so control falls through to the call site.
  std::string expand_call(const FunctionDef& callee, const std::vector<ExprPtr>& args,
                          std::vector<StmtPtr>& prelude, int line) {
    std::string p = "_i" + std::to_string(++counter_) + "_";
    FunctionDef body = inlined(callee);  // callees expand bottom-up
    for (size_t i = 0; i < callee.params.size(); ++i) {
      prelude.push_back(make_let(p + callee.params[i].name, callee.params[i].ty, args[i], line));
    }
    prelude.push_back(
        make_let(p + "ret", callee.return_ty, make_zero(callee.return_ty, line), line));
    prelude.push_back(make_let(p + "done", Ty::Int, make_int_lit(0, line), line, true));
    auto guarded = transform_block(body.body, p);
    prelude.insert(prelude.end(), guarded.begin(), guarded.end());
    return p + "ret";
  }

  // Nested expansions keep their own prefixes; the outer rename applied by
  // transform_block makes them unique per call site.
  const FunctionDef& inlined(const FunctionDef& fn) {
    auto it = cache_.find(fn.name);
    if (it != cache_.end()) return it->second;
    Inliner sub(prog_);
    auto [ins, ok] = cache_.emplace(fn.name, sub.run(fn));
    return ins->second;
  }

  ExprPtr rename_expr(const ExprPtr& e, const std::string& p) {
    if (!e) return e;
    auto out = std::make_shared<Expr>(*e);
    if (out->kind == Expr::Kind::Var) out->name = p + out->name;
    for (auto& a : out->args) a = rename_expr(a, p);
    return out;
  }

  ExprPtr done_check(const std::string& p, int line) {
    auto c = std::make_shared<Expr>();
    c->kind = Expr::Kind::Cmp;
    c->cmp = sym::CmpOp::Eq;
    c->ty = Ty::Bool;
    c->line = line;
    c->args = {make_var(p + "done", Ty::Int, line), make_int_lit(0, line)};
    return c;
  }

  ExprPtr conj_cond(ExprPtr a, ExprPtr b, int line) {
    auto c = std::make_shared<Expr>();
    c->kind = Expr::Kind::Bool;
    c->bop = Expr::BoolOp::And;
    c->ty = Ty::Bool;
    c->line = line;
    c->args = {std::move(a), std::move(b)};
    return c;
  }

  StmtPtr guard(StmtPtr inner, const std::string& p) {
    auto g = std::make_shared<Stmt>();
    g->kind = Stmt::Kind::If;
    g->line = inner->line;
    g->id = -1;
    g->cond = done_check(p, inner->line);
    g->body = {std::move(inner)};
    return g;
  }

  StmtPtr guard_pair(StmtPtr a, StmtPtr b, const std::string& p) {
    auto g = std::make_shared<Stmt>();
    g->kind = Stmt::Kind::If;
    g->line = a->line;
    g->id = -1;
    g->cond = done_check(p, a->line);
    g->body = {std::move(a), std::move(b)};
    return g;
  }

  std::vector<StmtPtr> transform_block(const std::vector<StmtPtr>& block, const std::string& p) {
    std::vector<StmtPtr> out;
    for (const auto& s : block) {
      switch (s->kind) {
        case Stmt::Kind::Let: {
          auto n = std::make_shared<Stmt>(*s);
          n->var = p + n->var;
          n->value = rename_expr(n->value, p);
          n->id = -1;
          out.push_back(guard(std::move(n), p));
          break;
        }
        case Stmt::Kind::Assign: {
          auto n = std::make_shared<Stmt>(*s);
          n->var = p + n->var;
          n->value = rename_expr(n->value, p);
          n->id = -1;
          out.push_back(guard(std::move(n), p));
          break;
        }
        case Stmt::Kind::Return: {
          auto set_ret = std::make_shared<Stmt>();
          set_ret->kind = Stmt::Kind::Assign;
          set_ret->var = p + "ret";
          set_ret->value = rename_expr(s->value, p);
          set_ret->line = s->line;
          set_ret->id = -1;
          auto set_done = std::make_shared<Stmt>();
          set_done->kind = Stmt::Kind::Assign;
          set_done->var = p + "done";
          set_done->value = make_int_lit(1, s->line);
          set_done->line = s->line;
          set_done->id = -1;
          out.push_back(guard_pair(std::move(set_ret), std::move(set_done), p));
          break;
        }
        case Stmt::Kind::Fail: {
          auto n = std::make_shared<Stmt>(*s);
          n->id = -1;
          out.push_back(guard(std::move(n), p));
          break;
        }
        case Stmt::Kind::If: {
          auto n = std::make_shared<Stmt>();
          n->kind = Stmt::Kind::If;
          n->line = s->line;
          n->id = -1;
          n->cond = rename_expr(s->cond, p);
          n->body = transform_block(s->body, p);
          n->else_body = transform_block(s->else_body, p);
          out.push_back(guard(std::move(n), p));
          break;
        }
        case Stmt::Kind::While: {
          auto n = std::make_shared<Stmt>();
          n->kind = Stmt::Kind::While;
          n->line = s->line;
          n->id = -1;
          n->cond = conj_cond(done_check(p, s->line), rename_expr(s->cond, p), s->line);
          n->body = transform_block(s->body, p);
          out.push_back(std::move(n));
          break;
        }
        case Stmt::Kind::For: {
          // for(init; c; step) -> init; while(done==0 && c) { body; if(done==0){step} }
          if (s->init) {
            auto init = std::make_shared<Stmt>(*s->init);
            init->var = p + init->var;
            init->value = rename_expr(init->value, p);
            init->id = -1;
            out.push_back(guard(std::move(init), p));
          }
          auto w = std::make_shared<Stmt>();
          w->kind = Stmt::Kind::While;
          w->line = s->line;
          w->id = -1;
          ExprPtr cond = done_check(p, s->line);
          if (s->cond) cond = conj_cond(std::move(cond), rename_expr(s->cond, p), s->line);
          w->cond = std::move(cond);
          w->body = transform_block(s->body, p);
          if (s->step) {
            auto step = std::make_shared<Stmt>(*s->step);
            step->var = p + step->var;
            step->value = rename_expr(step->value, p);
            step->id = -1;
            w->body.push_back(guard(std::move(step), p));
          }
          out.push_back(std::move(w));
          break;
        }
      }
    }
    return out;
  }

  const Program& prog_;
  std::map<std::string, FunctionDef> cache_;
  long counter_ = 0;
};

}  // namespace

FunctionDef inline_calls(const FunctionDef& fn, const Program& prog) {
  Inliner inliner(prog);
  return inliner.run(fn);
}

ProductUnit build_product(const FunctionDef& v1, const Program& prog1, const FunctionDef& v2,
                          const Program& prog2) {
  if (v1.params.size() != v2.params.size()) {
    throw SignatureMismatch("arity " + std::to_string(v1.params.size()) + " vs " +
                            std::to_string(v2.params.size()));
  }
  for (size_t i = 0; i < v1.params.size(); ++i) {
    if (v1.params[i].ty != v2.params[i].ty) {
      throw SignatureMismatch("parameter " + std::to_string(i + 1) + " type differs");
    }
  }
  if (v1.return_ty != v2.return_ty) throw SignatureMismatch("return type differs");

  ProductUnit unit;
  unit.v1 = inline_calls(v1, prog1);
  unit.v2 = inline_calls(v2, prog2);
  unit.shared_params = v1.params;
  unit.return_ty = v1.return_ty;
  return unit;
}

}  // namespace pasda::product
