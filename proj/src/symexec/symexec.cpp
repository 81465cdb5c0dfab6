#include "pasda/symexec/symexec.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pasda/sym/eval.hpp"
#include "pasda/sym/normalize.hpp"

namespace pasda::symexec {

using classify::OutputClass;
using classify::PartitionClass;
using classify::ReachClass;
using minilang::Stmt;
using minilang::StmtPtr;
using minilang::Ty;
using product::SymEffect;
using solver::Sat;
using sym::ExprPtr;
using sym::FormulaPtr;

namespace {

sym::Type to_sym_type(Ty t) { return t == Ty::Real ? sym::Type::Real : sym::Type::Int; }

ExprPtr coerce(ExprPtr e, Ty ty) { return ty == Ty::Real ? sym::to_real(std::move(e)) : e; }

struct ControlFrame {
  enum class Kind { Block, LoopCheck };
  Kind kind = Kind::Block;
  const std::vector<StmtPtr>* block = nullptr;  // Block
  size_t idx = 0;
  const Stmt* loop = nullptr;  // LoopCheck (While or For)
  bool init_done = false;      // For: header init executed
  bool step_pending = false;   // For: run step before next condition check
};

struct EngState {
  std::map<std::string, ExprPtr> store;
  std::vector<FormulaPtr> pc;                // canonical atoms
  std::map<std::string, bool> decided;       // canonical atom text -> truth on this path
  std::map<std::string, int> divisor_signs;  // canonical divisor text -> -1/0/+1
  int decisions = 0;
  int inline_ticks = 0;
  std::set<int> cov1, cov2;
  int phase = 0;  // 0 = v1 running, 1 = v2 running
  std::optional<SymEffect> effect1;
  std::vector<ControlFrame> control;
  Sat pc_verdict = Sat::Sat;  // verdict of the last feasibility check on pc
  std::optional<sym::Assignment> pc_witness;
};

class Engine {
public:
  Engine(const product::ProductUnit& unit, const ExploreOptions& opts, solver::SatOracle& solver)
      : unit_(unit), opts_(opts), solver_(solver) {
    collect_var_types(unit_.v1, var_types_[0]);
    collect_var_types(unit_.v2, var_types_[1]);
  }

  ExploreResult run() {
    EngState init;
    for (const auto& p : unit_.shared_params) {
      inputs_.push_back(sym::symbol(p.name, to_sym_type(p.ty)));
    }
    bind_params(init, unit_.v1);
    init.control.push_back(ControlFrame{ControlFrame::Kind::Block, &unit_.v1.body, 0, nullptr,
                                        false, false});
    stack_.push_back(std::move(init));

    while (!stack_.empty() && !deadline_hit_) {
      EngState st = std::move(stack_.back());
      stack_.pop_back();
      run_path(st);
    }

    ExploreResult out;
    out.records = std::move(records_);
    out.status = deadline_hit_ ? ExploreStatus::DeadlineHit : ExploreStatus::Complete;
    out.stats.classify_time = classify_time_;
    out.stats.decisions = decisions_total_;
    out.stats.steps = steps_;
    return out;
  }

private:
  // ---------------------------------------------------------------------
  // evaluation outcomes
  // ---------------------------------------------------------------------
  struct EvalAborted {};  // path forked, finished or hit the deadline

  void collect_var_types(const minilang::FunctionDef& fn, std::map<std::string, Ty>& out) {
    for (const auto& p : fn.params) out[p.name] = p.ty;
    collect_block_types(fn.body, out);
  }

  void collect_block_types(const std::vector<StmtPtr>& block, std::map<std::string, Ty>& out) {
    for (const auto& s : block) {
      if (s->kind == Stmt::Kind::Let) out[s->var] = *s->declared_ty;
      if (s->init && s->init->kind == Stmt::Kind::Let) out[s->init->var] = *s->init->declared_ty;
      collect_block_types(s->body, out);
      collect_block_types(s->else_body, out);
    }
  }

  void bind_params(EngState& st, const minilang::FunctionDef& fn) {
    st.store.clear();
    for (size_t i = 0; i < fn.params.size(); ++i) {
      st.store[fn.params[i].name] = coerce(inputs_[i], fn.params[i].ty);
    }
  }

  bool deadline_passed() {
    return opts_.deadline && std::chrono::steady_clock::now() >= *opts_.deadline;
  }

  // Runs one state until it forks (successors pushed), finishes (record
  // emitted) or the deadline hits.
  void run_path(EngState& st) {
    try {
      while (true) {
        if (++steps_ > opts_.step_fuel) throw InternalError("step budget exhausted");
        if (st.control.empty()) throw InternalError("path ended without return or fail");
        ControlFrame& frame = st.control.back();
        if (frame.kind == ControlFrame::Kind::Block) {
          if (frame.idx >= frame.block->size()) {
            st.control.pop_back();
            continue;
          }
          exec_stmt(st, *(*frame.block)[frame.idx]);
        } else {
          exec_loop_check(st, frame);
        }
      }
    } catch (const EvalAborted&) {
    }
  }

  void cover(EngState& st, int line) {
    if (line <= 0) return;
    (st.phase == 0 ? st.cov1 : st.cov2).insert(line);
  }

  Ty var_ty(const EngState& st, const std::string& name) const {
    const auto& types = var_types_[st.phase];
    auto it = types.find(name);
    if (it == types.end()) throw InternalError("unknown variable " + name);
    return it->second;
  }

  void advance(EngState& st) { ++st.control.back().idx; }

  void exec_stmt(EngState& st, const Stmt& s) {
    cover(st, s.line);
    switch (s.kind) {
      case Stmt::Kind::Let:
      case Stmt::Kind::Assign: {
        if (s.inline_marker) {
          if (st.inline_ticks + 1 > opts_.depth_limit) {
            emit_depth_limited(st);
            throw EvalAborted{};
          }
        }
        ExprPtr value = eval_expr(st, *s.value);
        Ty ty = s.kind == Stmt::Kind::Let ? *s.declared_ty : var_ty(st, s.var);
        if (s.kind == Stmt::Kind::Assign && s.is_compound) {
          value = sym::binary(s.compound_op, st.store.at(s.var), value);
        }
        if (s.inline_marker) ++st.inline_ticks;
        st.store[s.var] = coerce(std::move(value), ty);
        advance(st);
        break;
      }
      case Stmt::Kind::If: {
        bool taken = eval_cond(st, *s.cond);
        advance(st);
        st.control.push_back(ControlFrame{ControlFrame::Kind::Block,
                                          taken ? &s.body : &s.else_body, 0, nullptr, false,
                                          false});
        break;
      }
      case Stmt::Kind::While:
      case Stmt::Kind::For: {
        advance(st);
        st.control.push_back(
            ControlFrame{ControlFrame::Kind::LoopCheck, nullptr, 0, &s, false, false});
        break;
      }
      case Stmt::Kind::Return: {
        ExprPtr value = eval_expr(st, *s.value);
        finish_phase(st, SymEffect::returned(coerce(std::move(value), unit_.return_ty)));
        break;
      }
      case Stmt::Kind::Fail: finish_phase(st, SymEffect::thrown(s.error_name)); break;
    }
  }

  void exec_loop_check(EngState& st, ControlFrame& frame) {
    const Stmt& loop = *frame.loop;
    cover(st, loop.line);
    if (loop.kind == Stmt::Kind::For) {
      if (!frame.init_done) {
        if (loop.init) {
          // header init executes as part of the for statement
          ExprPtr value = eval_expr(st, *loop.init->value);
          Ty ty = loop.init->kind == Stmt::Kind::Let ? *loop.init->declared_ty
                                                     : var_ty(st, loop.init->var);
          if (loop.init->kind == Stmt::Kind::Assign && loop.init->is_compound) {
            value = sym::binary(loop.init->compound_op, st.store.at(loop.init->var), value);
          }
          st.store[loop.init->var] = coerce(std::move(value), ty);
        }
        frame.init_done = true;
      }
      if (frame.step_pending) {
        if (loop.step) {
          ExprPtr value = eval_expr(st, *loop.step->value);
          Ty ty = var_ty(st, loop.step->var);
          if (loop.step->is_compound) {
            value = sym::binary(loop.step->compound_op, st.store.at(loop.step->var), value);
          }
          st.store[loop.step->var] = coerce(std::move(value), ty);
        }
        frame.step_pending = false;
      }
      bool enter = loop.cond ? eval_cond(st, *loop.cond) : true;
      if (!enter) {
        st.control.pop_back();
        return;
      }
      frame.step_pending = true;
      st.control.push_back(
          ControlFrame{ControlFrame::Kind::Block, &loop.body, 0, nullptr, false, false});
      return;
    }
    // While
    bool enter = eval_cond(st, *loop.cond);
    if (!enter) {
      st.control.pop_back();
      return;
    }
    st.control.push_back(
        ControlFrame{ControlFrame::Kind::Block, &loop.body, 0, nullptr, false, false});
  }

  [[noreturn]] void finish_phase(EngState& st, SymEffect effect) {
    if (st.phase == 0) {
      st.effect1 = std::move(effect);
      st.phase = 1;
      bind_params(st, unit_.v2);
      st.control.clear();
      st.control.push_back(
          ControlFrame{ControlFrame::Kind::Block, &unit_.v2.body, 0, nullptr, false, false});
      // continue this state directly
      run_path(st);
      throw EvalAborted{};
    }
    emit_record(st, std::move(effect));
    throw EvalAborted{};
  }

  // ---------------------------------------------------------------------
  // expression evaluation (pure; forks abort and re-enter via successors)
  // ---------------------------------------------------------------------

  ExprPtr eval_expr(EngState& st, const minilang::Expr& e) {
    using K = minilang::Expr::Kind;
    switch (e.kind) {
      case K::IntLit: return sym::int_const(e.int_val);
      case K::RealLit: return sym::real_const(e.real_val);
      case K::Var: {
        auto it = st.store.find(e.name);
        if (it == st.store.end()) throw InternalError("unbound variable " + e.name);
        return it->second;
      }
      case K::Neg: return sym::negate(eval_expr(st, *e.args[0]));
      case K::Arith: {
        ExprPtr l = eval_expr(st, *e.args[0]);
        ExprPtr r = eval_expr(st, *e.args[1]);
        if (e.arith == sym::BinOp::Div || e.arith == sym::BinOp::Mod) {
          resolve_divisor(st, r);
        }
        return sym::binary(e.arith, std::move(l), std::move(r));
      }
      case K::Call: {
        if (!e.intrinsic) throw InternalError("user call survived inlining");
        std::vector<ExprPtr> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval_expr(st, *a));
        return sym::call(*e.intrinsic, std::move(args));
      }
      case K::Uif: {
        std::vector<ExprPtr> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval_expr(st, *a));
        return sym::uif_app(e.uif_id, std::move(args), to_sym_type(e.ty));
      }
      default: throw InternalError("boolean expression in scalar position");
    }
  }

  // Division/modulo by a symbolic divisor forks on the divisor's sign; the
  // zero arm raises DivByZero. The resolved sign is cached per path so the
  // re-evaluation after the fork takes the recorded arm.
  void resolve_divisor(EngState& st, const ExprPtr& divisor) {
    if (sym::is_const(divisor)) {
      bool zero = divisor->kind == sym::Expr::Kind::IntConst ? divisor->int_val == 0
                                                             : divisor->real_val == 0.0;
      if (zero) finish_phase(st, SymEffect::thrown("DivByZero"));
      return;
    }
    ExprPtr canon = sym::canonicalize(divisor);
    if (sym::is_const(canon)) {
      bool zero = canon->kind == sym::Expr::Kind::IntConst ? canon->int_val == 0
                                                           : canon->real_val == 0.0;
      if (zero) finish_phase(st, SymEffect::thrown("DivByZero"));
      return;
    }
    std::string key = sym::to_string(canon);
    auto it = st.divisor_signs.find(key);
    if (it != st.divisor_signs.end()) {
      if (it->second == 0) finish_phase(st, SymEffect::thrown("DivByZero"));
      return;
    }
    ExprPtr zero = canon->type == sym::Type::Int ? sym::int_const(0) : sym::real_const(0.0);
    struct Arm {
      FormulaPtr atom;
      int sign;
    };
    std::vector<Arm> arms = {{sym::normalize_cmp(sym::CmpOp::Lt, canon, zero), -1},
                             {sym::normalize_cmp(sym::CmpOp::Eq, canon, zero), 0},
                             {sym::normalize_cmp(sym::CmpOp::Gt, canon, zero), 1}};
    fork(st, [&](EngState& succ, size_t arm_idx) {
      succ.divisor_signs[key] = arms[arm_idx].sign;
    },
         {arms[0].atom, arms[1].atom, arms[2].atom});
    throw EvalAborted{};
  }

  // Short-circuit condition walk. Comparisons whose canonical atom is not
  // yet decided on this path fork; everything else folds.
  bool eval_cond(EngState& st, const minilang::Expr& e) {
    using K = minilang::Expr::Kind;
    switch (e.kind) {
      case K::Cmp: {
        ExprPtr l = eval_expr(st, *e.args[0]);
        ExprPtr r = eval_expr(st, *e.args[1]);
        FormulaPtr atom = sym::normalize_cmp(e.cmp, l, r);
        if (sym::is_true(atom)) return true;
        if (sym::is_false(atom)) return false;
        std::string key = sym::to_string(atom);
        auto it = st.decided.find(key);
        if (it != st.decided.end()) return it->second;
        fork_on_comparison(st, atom);
        throw EvalAborted{};
      }
      case K::Bool:
        if (e.bop == minilang::Expr::BoolOp::And) {
          return eval_cond(st, *e.args[0]) && eval_cond(st, *e.args[1]);
        }
        return eval_cond(st, *e.args[0]) || eval_cond(st, *e.args[1]);
      case K::Not: return !eval_cond(st, *e.args[0]);
      default: throw InternalError("scalar expression in boolean position");
    }
  }

  // Branch decision on a canonical comparison atom. Comparisons free of
  // transcendental terms split into strict/equal/strict arms (the
  // constraint normalization the backing executor applies); hard
  // comparisons fork binary. Arms are explored in <, =, > order.
  void fork_on_comparison(EngState& st, const FormulaPtr& atom) {
    std::string key = sym::to_string(atom);
    struct Arm {
      FormulaPtr constraint;
      std::map<std::string, bool> implies;  // decided-map updates
    };
    std::vector<Arm> arms;
    if (sym::has_transcendental(atom)) {
      FormulaPtr negated = sym::normalize_cmp(sym::negate_cmp(atom->op), atom->lhs, atom->rhs);
      arms.push_back(Arm{atom, {{key, true}}});
      arms.push_back(Arm{negated, {{key, false}, {sym::to_string(negated), true}}});
    } else {
      FormulaPtr lt = sym::normalize_cmp(sym::CmpOp::Lt, atom->lhs, atom->rhs);
      FormulaPtr eq = sym::normalize_cmp(sym::CmpOp::Eq, atom->lhs, atom->rhs);
      FormulaPtr gt = sym::normalize_cmp(sym::CmpOp::Gt, atom->lhs, atom->rhs);
      auto outcome_in = [&](sym::CmpOp region) {
        switch (atom->op) {
          case sym::CmpOp::Lt: return region == sym::CmpOp::Lt;
          case sym::CmpOp::Le: return region != sym::CmpOp::Gt;
          case sym::CmpOp::Gt: return region == sym::CmpOp::Gt;
          case sym::CmpOp::Ge: return region != sym::CmpOp::Lt;
          case sym::CmpOp::Eq: return region == sym::CmpOp::Eq;
          case sym::CmpOp::Ne: return region != sym::CmpOp::Eq;
        }
        return false;
      };
      auto arm_for = [&](const FormulaPtr& c, sym::CmpOp region) {
        Arm arm;
        arm.constraint = c;
        arm.implies[key] = outcome_in(region);
        arm.implies[sym::to_string(lt)] = region == sym::CmpOp::Lt;
        arm.implies[sym::to_string(eq)] = region == sym::CmpOp::Eq;
        arm.implies[sym::to_string(gt)] = region == sym::CmpOp::Gt;
        return arm;
      };
      arms.push_back(arm_for(lt, sym::CmpOp::Lt));
      arms.push_back(arm_for(eq, sym::CmpOp::Eq));
      arms.push_back(arm_for(gt, sym::CmpOp::Gt));
    }
    std::vector<FormulaPtr> constraints;
    constraints.reserve(arms.size());
    for (const auto& a : arms) constraints.push_back(a.constraint);
    fork(st, [&](EngState& succ, size_t arm_idx) {
      for (const auto& [k, v] : arms[arm_idx].implies) succ.decided[k] = v;
    },
         constraints);
  }

  // Shared fork machinery: feasibility-checks each arm, prunes unsat arms,
  // and either pushes successors or emits depth-limited records when this
  // would be decision depth_limit+1.
  template <typename Customize>
  void fork(EngState& st, Customize customize, const std::vector<FormulaPtr>& arm_atoms) {
    if (deadline_passed()) {
      deadline_hit_ = true;
      throw EvalAborted{};
    }
    bool over_limit = st.decisions + 1 > opts_.depth_limit;
    ++decisions_total_;
    std::vector<EngState> successors;
    for (size_t i = 0; i < arm_atoms.size(); ++i) {
      const FormulaPtr& atom = arm_atoms[i];
      if (sym::is_false(atom)) continue;
      EngState succ = st;
      bool redundant = sym::is_true(atom);
      if (!redundant) {
        for (const auto& existing : succ.pc) {
          if (sym::structurally_equal(existing, atom)) {
            redundant = true;
            break;
          }
        }
      }
      if (!redundant) succ.pc.push_back(atom);
      auto verdict = solver_.check_sat(sym::conj(succ.pc));
      if (deadline_passed()) {
        deadline_hit_ = true;
        throw EvalAborted{};
      }
      if (verdict.value == Sat::Unsat) continue;  // unreachable arm, pruned silently
      succ.pc_verdict = verdict.value;
      succ.pc_witness = verdict.witness;
      succ.decisions = st.decisions + 1;
      customize(succ, i);
      if (over_limit) {
        emit_depth_limited(succ);
      } else {
        successors.push_back(std::move(succ));
      }
    }
    for (auto it = successors.rbegin(); it != successors.rend(); ++it) {
      stack_.push_back(std::move(*it));
    }
    throw EvalAborted{};
  }

  // ---------------------------------------------------------------------
  // record emission
  // ---------------------------------------------------------------------

  FormulaPtr pc_formula(const EngState& st) { return sym::conj(st.pc); }

  void emit_depth_limited(const EngState& st) {
    PartitionRecord rec;
    rec.index = static_cast<int>(records_.size()) + 1;
    rec.pc = pc_formula(st);
    rec.covered_v1.assign(st.cov1.begin(), st.cov1.end());
    rec.covered_v2.assign(st.cov2.begin(), st.cov2.end());
    rec.uif_in_pc = sym::contains_uif(rec.pc);
    rec.hard_terms_present = sym::has_transcendental(rec.pc);
    rec.reach = classify::reachability_from_verdict(rec.uif_in_pc, st.pc_verdict);
    rec.depth_limited = true;
    rec.overall = PartitionClass::DepthLimited;
    records_.push_back(std::move(rec));
  }

  bool effect_has_uif(const SymEffect& e) {
    return e.kind == SymEffect::Kind::Return && sym::contains_uif(e.value);
  }

  bool effect_has_hard(const SymEffect& e) {
    return e.kind == SymEffect::Kind::Return && sym::has_transcendental(e.value);
  }

  void emit_record(EngState& st, SymEffect effect2) {
    PartitionRecord rec;
    rec.index = static_cast<int>(records_.size()) + 1;
    rec.pc = pc_formula(st);
    rec.effect_v1 = std::move(st.effect1);
    rec.effect_v2 = std::move(effect2);
    rec.covered_v1.assign(st.cov1.begin(), st.cov1.end());
    rec.covered_v2.assign(st.cov2.begin(), st.cov2.end());
    rec.uif_in_pc = sym::contains_uif(rec.pc);
    rec.uif_in_effects = effect_has_uif(*rec.effect_v1) || effect_has_uif(*rec.effect_v2);
    rec.hard_terms_present = sym::has_transcendental(rec.pc) || effect_has_hard(*rec.effect_v1) ||
                             effect_has_hard(*rec.effect_v2);

    auto t0 = std::chrono::steady_clock::now();
    rec.reach = classify::reachability_from_verdict(rec.uif_in_pc, st.pc_verdict);
    auto output = classify::classify_output(rec.pc, *rec.effect_v1, *rec.effect_v2,
                                            rec.uif_in_effects, solver_);
    rec.output_class = output.cls;
    rec.overall = classify::overall_partition(rec.reach, output.cls);
    classify_time_ += std::chrono::steady_clock::now() - t0;

    if (rec.overall == PartitionClass::Neq) {
      rec.witness = build_neq_witness(rec, output.neq_witness, st.pc_witness);
    }
    records_.push_back(std::move(rec));
    if (deadline_passed()) {
      deadline_hit_ = true;
    }
  }

  // Completes and validates a concrete witness for a NEQ partition: missing
  // inputs default to zero, then the candidate must satisfy the pc and, for
  // return/return partitions, make the effects differ under concrete
  // evaluation.
  std::optional<sym::Assignment> build_neq_witness(const PartitionRecord& rec,
                                                   const std::optional<sym::Assignment>& from_neq,
                                                   const std::optional<sym::Assignment>& from_pc) {
    std::vector<sym::Assignment> candidates;
    if (from_neq) candidates.push_back(*from_neq);
    if (from_pc) candidates.push_back(*from_pc);
    candidates.emplace_back();
    for (auto& cand : candidates) {
      for (size_t i = 0; i < inputs_.size(); ++i) {
        if (!cand.vars.count(inputs_[i]->name)) {
          cand.vars[inputs_[i]->name] = inputs_[i]->type == sym::Type::Int
                                            ? sym::Value::of_int(0)
                                            : sym::Value::of_real(0.0);
        }
      }
      auto pc_ok = sym::eval(rec.pc, cand);
      if (!pc_ok || !*pc_ok) continue;
      bool is_return_pair = rec.effect_v1->kind == SymEffect::Kind::Return &&
                            rec.effect_v2->kind == SymEffect::Kind::Return;
      if (is_return_pair) {
        auto v1 = sym::eval(rec.effect_v1->value, cand);
        auto v2 = sym::eval(rec.effect_v2->value, cand);
        if (!v1 || !v2) continue;
        bool differ = v1->type == sym::Type::Int && v2->type == sym::Type::Int
                          ? v1->i != v2->i
                          : v1->as_real() != v2->as_real();
        if (!differ) continue;
      }
      return cand;
    }
    return std::nullopt;
  }

  const product::ProductUnit& unit_;
  ExploreOptions opts_;
  solver::SatOracle& solver_;
  std::vector<ExprPtr> inputs_;
  std::map<std::string, Ty> var_types_[2];
  std::vector<EngState> stack_;
  std::vector<PartitionRecord> records_;
  bool deadline_hit_ = false;
  std::int64_t steps_ = 0;
  std::int64_t decisions_total_ = 0;
  std::chrono::nanoseconds classify_time_{};
};

}  // namespace

ExploreResult explore(const product::ProductUnit& unit, const ExploreOptions& opts,
                      solver::SatOracle& solver) {
  Engine engine(unit, opts, solver);
  return engine.run();
}

}  // namespace pasda::symexec
