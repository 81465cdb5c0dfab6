#include "pasda/diffmatch/diffmatch.hpp"

#include <algorithm>

#include "pasda/minilang/print.hpp"

namespace pasda::diffmatch {

using minilang::Expr;
using minilang::ExprPtr;
using minilang::FunctionDef;
using minilang::Stmt;
using minilang::StmtPtr;
using minilang::Ty;

namespace {

bool is_control(const StmtPtr& s) {
  return s->kind == Stmt::Kind::If || s->kind == Stmt::Kind::While || s->kind == Stmt::Kind::For;
}

void match_blocks(const std::vector<StmtPtr>& b1, const std::vector<StmtPtr>& b2,
                  std::vector<std::pair<int, int>>& out) {
  size_t j = 0;
  for (const auto& s1 : b1) {
    std::string t1 = minilang::stmt_text(s1);
    for (size_t k = j; k < b2.size(); ++k) {
      if (minilang::stmt_text(b2[k]) != t1) continue;
      const auto& s2 = b2[k];
      out.emplace_back(s1->id, s2->id);
      if (is_control(s1)) {
        match_blocks(s1->body, s2->body, out);
        match_blocks(s1->else_body, s2->else_body, out);
      }
      j = k + 1;
      break;
    }
  }
}

bool expr_reads_vars(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return true;
  if (e->kind == Expr::Kind::Var) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
    return true;
  }
  for (const auto& a : e->args) {
    if (!expr_reads_vars(a, out)) return false;
  }
  return true;
}

bool contains_user_call_or_uif(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Uif) return true;
  if (e->kind == Expr::Kind::Call && !e->intrinsic) return true;
  for (const auto& a : e->args) {
    if (contains_user_call_or_uif(a)) return true;
  }
  return false;
}

// A division or modulo whose divisor is not a nonzero literal could raise
// DivByZero; abstracting such a statement would hide the error path, which
// breaks witness replay on the original programs.
bool may_throw(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Arith &&
      (e->arith == sym::BinOp::Div || e->arith == sym::BinOp::Mod)) {
    const auto& d = e->args[1];
    bool nonzero_literal = (d->kind == Expr::Kind::IntLit && d->int_val != 0) ||
                           (d->kind == Expr::Kind::RealLit && d->real_val != 0.0);
    if (!nonzero_literal) return true;
  }
  for (const auto& a : e->args) {
    if (may_throw(a)) return true;
  }
  return false;
}

bool abstractable(const StmtPtr& s) {
  if (s->kind != Stmt::Kind::Let && s->kind != Stmt::Kind::Assign) return false;
  if (contains_user_call_or_uif(s->value)) return false;
  if (may_throw(s->value)) return false;
  return true;
}

int count_nonlinear(const ExprPtr& e) {
  if (!e) return 0;
  int n = 0;
  if (e->kind == Expr::Kind::Arith) {
    auto non_const = [](const ExprPtr& x) {
      return x->kind != Expr::Kind::IntLit && x->kind != Expr::Kind::RealLit;
    };
    if (e->arith == sym::BinOp::Mul && non_const(e->args[0]) && non_const(e->args[1])) ++n;
    if ((e->arith == sym::BinOp::Div || e->arith == sym::BinOp::Mod) && non_const(e->args[1])) ++n;
  }
  if (e->kind == Expr::Kind::Call && e->intrinsic) {
    switch (*e->intrinsic) {
      case sym::Intrinsic::Tan:
      case sym::Intrinsic::Sin:
      case sym::Intrinsic::Cos:
      case sym::Intrinsic::Sqrt:
      case sym::Intrinsic::Log:
      case sym::Intrinsic::Pow: ++n; break;
      default: break;
    }
  }
  for (const auto& a : e->args) n += count_nonlinear(a);
  return n;
}

struct StmtInfo {
  StmtPtr stmt;
  int loop_depth = 0;
};

void collect_stmts(const std::vector<StmtPtr>& block, int loop_depth,
                   std::map<int, StmtInfo>& out) {
  for (const auto& s : block) {
    out[s->id] = StmtInfo{s, loop_depth};
    if (s->kind == Stmt::Kind::If) {
      collect_stmts(s->body, loop_depth, out);
      collect_stmts(s->else_body, loop_depth, out);
    } else if (s->kind == Stmt::Kind::While) {
      collect_stmts(s->body, loop_depth + 1, out);
    } else if (s->kind == Stmt::Kind::For) {
      if (s->init) out[s->init->id] = StmtInfo{s->init, loop_depth};
      if (s->step) out[s->step->id] = StmtInfo{s->step, loop_depth + 1};
      collect_stmts(s->body, loop_depth + 1, out);
    }
  }
}

// Static variable types of a function (unique names, so one flat map).
void collect_var_types(const FunctionDef& fn, std::map<std::string, Ty>& out) {
  for (const auto& p : fn.params) out[p.name] = p.ty;
  std::map<int, StmtInfo> stmts;
  collect_stmts(fn.body, 0, stmts);
  for (const auto& [id, info] : stmts) {
    if (info.stmt->kind == Stmt::Kind::Let) out[info.stmt->var] = *info.stmt->declared_ty;
  }
}

}  // namespace

MatchSet match_unchanged(const FunctionDef& v1, const FunctionDef& v2) {
  MatchSet out;
  match_blocks(v1.body, v2.body, out.pairs);
  return out;
}

Abstraction::Abstraction(const FunctionDef& v1, const FunctionDef& v2) : v1_(v1), v2_(v2) {
  matches_ = match_unchanged(v1_, v2_);

  std::map<int, StmtInfo> stmts1, stmts2;
  collect_stmts(v1_.body, 0, stmts1);
  collect_stmts(v2_.body, 0, stmts2);
  std::map<std::string, Ty> types1, types2;
  collect_var_types(v1_, types1);
  collect_var_types(v2_, types2);

  // Textual occurrence counts per side (all Let/Assign statements).
  std::map<std::string, std::pair<int, int>> occurrences;
  for (const auto& [id, info] : stmts1) {
    if (info.stmt->kind == Stmt::Kind::Let || info.stmt->kind == Stmt::Kind::Assign) {
      occurrences[minilang::stmt_text(info.stmt)].first++;
    }
  }
  for (const auto& [id, info] : stmts2) {
    if (info.stmt->kind == Stmt::Kind::Let || info.stmt->kind == Stmt::Kind::Assign) {
      occurrences[minilang::stmt_text(info.stmt)].second++;
    }
  }

  std::map<std::string, UifId> text_to_uif;
  for (const auto& [id1, id2] : matches_.pairs) {
    const auto& info1 = stmts1.at(id1);
    const auto& info2 = stmts2.at(id2);
    if (!abstractable(info1.stmt)) continue;

    // Live-ins: target first for compound assignments, then RHS reads.
    std::vector<std::string> reads;
    if (info1.stmt->kind == Stmt::Kind::Assign && info1.stmt->is_compound) {
      reads.push_back(info1.stmt->var);
    }
    expr_reads_vars(info1.stmt->value, reads);
    std::string output = info1.stmt->var;

    // The UIF signature must agree across both sides.
    bool typed_ok = true;
    std::vector<Ty> in_types;
    for (const auto& r : reads) {
      auto it1 = types1.find(r);
      auto it2 = types2.find(r);
      if (it1 == types1.end() || it2 == types2.end() || it1->second != it2->second) {
        typed_ok = false;
        break;
      }
      in_types.push_back(it1->second);
    }
    Ty out_ty1 = info1.stmt->kind == Stmt::Kind::Let ? *info1.stmt->declared_ty : types1.at(output);
    Ty out_ty2 = info2.stmt->kind == Stmt::Kind::Let ? *info2.stmt->declared_ty : types2.at(output);
    if (!typed_ok || out_ty1 != out_ty2) continue;

    std::string text = minilang::stmt_text(info1.stmt);
    auto it = text_to_uif.find(text);
    UifId id;
    if (it == text_to_uif.end()) {
      id = static_cast<UifId>(sites_.size()) + 1;
      text_to_uif.emplace(text, id);
      UifSite site;
      site.id = id;
      site.input_vars = reads;
      site.output_var = output;
      site.input_types = in_types;
      site.output_type = out_ty1;
      site.occurrences_v1 = occurrences[text].first;
      site.occurrences_v2 = occurrences[text].second;
      site.loop_depth = info1.loop_depth;
      site.nonlinear_count = count_nonlinear(info1.stmt->value);
      sites_.push_back(std::move(site));
    } else {
      id = it->second;
    }
    sites_[id - 1].replaced.emplace_back(id1, id2);
    stmt_to_uif_v1_[id1] = id;
    stmt_to_uif_v2_[id2] = id;
  }
}

std::vector<UifSite> Abstraction::active_sites(const RefinementState& state) const {
  std::vector<UifSite> out;
  if (state.iteration < 2) return out;
  for (const auto& s : sites_) {
    if (!state.excluded.count(s.id)) out.push_back(s);
  }
  return out;
}

namespace {

StmtPtr replace_with_uif(const StmtPtr& s, const UifSite& site) {
  auto out = std::make_shared<Stmt>();
  out->kind = Stmt::Kind::Assign;
  out->line = s->line;
  out->id = s->id;
  out->var = site.output_var;
  out->is_compound = false;
  auto uif = std::make_shared<Expr>();
  uif->kind = Expr::Kind::Uif;
  uif->uif_id = site.id;
  uif->ty = site.output_type;
  uif->line = s->line;
  for (size_t i = 0; i < site.input_vars.size(); ++i) {
    auto var = std::make_shared<Expr>();
    var->kind = Expr::Kind::Var;
    var->name = site.input_vars[i];
    var->ty = site.input_types[i];
    var->line = s->line;
    uif->args.push_back(std::move(var));
  }
  out->value = std::move(uif);
  return out;
}

void apply_block(std::vector<StmtPtr>& block, const std::map<int, UifId>& plan,
                 const std::vector<UifSite>& sites, const std::set<UifId>& excluded) {
  for (auto& s : block) {
    auto it = plan.find(s->id);
    if (it != plan.end() && !excluded.count(it->second)) {
      s = replace_with_uif(s, sites[it->second - 1]);
      continue;
    }
    apply_block(s->body, plan, sites, excluded);
    apply_block(s->else_body, plan, sites, excluded);
  }
}

}  // namespace

minilang::FunctionDef Abstraction::apply(Side side, const RefinementState& state) const {
  const FunctionDef& src = side == Side::V1 ? v1_ : v2_;
  if (state.iteration < 2) return clone_function(src);
  FunctionDef out = clone_function(src);
  const auto& plan = side == Side::V1 ? stmt_to_uif_v1_ : stmt_to_uif_v2_;
  apply_block(out.body, plan, sites_, state.excluded);
  return out;
}

}  // namespace pasda::diffmatch
