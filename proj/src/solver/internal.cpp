#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "pasda/solver/solver.hpp"
#include "pasda/sym/normalize.hpp"

namespace pasda::solver {

using sym::Assignment;
using sym::ExprPtr;
using sym::FormulaPtr;
using sym::Rational;
using sym::Type;
using sym::UifKey;
using sym::Value;

namespace {

constexpr std::int64_t kExhaustiveCap = 2'000'000;
constexpr std::int64_t kSearchCap = 60'000;
constexpr int kSlotSearchCap = 4096;

ExprPtr substitute_vars(const ExprPtr& e, const std::map<std::string, Value>& vars) {
  switch (e->kind) {
    case sym::Expr::Kind::Symbol: {
      auto it = vars.find(e->name);
      if (it == vars.end()) return e;
      const Value& v = it->second;
      ExprPtr c = v.type == Type::Int ? sym::int_const(v.i) : sym::real_const(v.r);
      return e->type == Type::Real ? sym::to_real(c) : c;
    }
    case sym::Expr::Kind::IntConst:
    case sym::Expr::Kind::RealConst: return e;
    default: break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(substitute_vars(a, vars));
  switch (e->kind) {
    case sym::Expr::Kind::Bin: return sym::binary(e->op, args[0], args[1]);
    case sym::Expr::Kind::Neg: return sym::negate(args[0]);
    case sym::Expr::Kind::IntToReal: return sym::to_real(args[0]);
    case sym::Expr::Kind::Call: return sym::call(e->fn, std::move(args));
    case sym::Expr::Kind::Uif: return sym::uif_app(e->uif_id, std::move(args), e->type);
    default: return e;
  }
}

FormulaPtr substitute_vars(const FormulaPtr& f, const std::map<std::string, Value>& vars) {
  switch (f->kind) {
    case sym::Formula::Kind::Const: return f;
    case sym::Formula::Kind::Cmp:
      return sym::cmp(f->op, substitute_vars(f->lhs, vars), substitute_vars(f->rhs, vars));
    default: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->parts.size());
      for (const auto& p : f->parts) parts.push_back(substitute_vars(p, vars));
      if (f->kind == sym::Formula::Kind::And) return sym::conj(std::move(parts));
      if (f->kind == sym::Formula::Kind::Or) return sym::disj(std::move(parts));
      return sym::neg(parts[0]);
    }
  }
}

// Rewrites UIF applications to slot symbols, inner applications first, so
// that structurally identical (congruent) applications share a slot.
struct SlotTable {
  std::vector<ExprPtr> apps;   // original application, args already concrete
  std::vector<ExprPtr> slots;  // slot symbol per distinct application
};

ExprPtr slotify(const ExprPtr& e, SlotTable& table) {
  if (e->args.empty()) return e;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(slotify(a, table));
  ExprPtr rebuilt;
  switch (e->kind) {
    case sym::Expr::Kind::Bin: rebuilt = sym::binary(e->op, args[0], args[1]); break;
    case sym::Expr::Kind::Neg: rebuilt = sym::negate(args[0]); break;
    case sym::Expr::Kind::IntToReal: rebuilt = sym::to_real(args[0]); break;
    case sym::Expr::Kind::Call: rebuilt = sym::call(e->fn, std::move(args)); break;
    case sym::Expr::Kind::Uif: {
      rebuilt = sym::uif_app(e->uif_id, std::move(args), e->type);
      for (size_t i = 0; i < table.apps.size(); ++i) {
        if (sym::structurally_equal(table.apps[i], rebuilt)) return table.slots[i];
      }
      auto slot = sym::symbol("_u" + std::to_string(table.apps.size()), e->type);
      table.apps.push_back(rebuilt);
      table.slots.push_back(slot);
      return slot;
    }
    default: rebuilt = e; break;
  }
  return rebuilt;
}

FormulaPtr slotify(const FormulaPtr& f, SlotTable& table) {
  switch (f->kind) {
    case sym::Formula::Kind::Const: return f;
    case sym::Formula::Kind::Cmp:
      return sym::cmp(f->op, slotify(f->lhs, table), slotify(f->rhs, table));
    default: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->parts.size());
      for (const auto& p : f->parts) parts.push_back(slotify(p, table));
      if (f->kind == sym::Formula::Kind::And) return sym::conj(std::move(parts));
      if (f->kind == sym::Formula::Kind::Or) return sym::disj(std::move(parts));
      return sym::neg(parts[0]);
    }
  }
}

// Fills witness UIF tables from chosen slot values, inner slots first.
bool build_uif_tables(const SlotTable& table, const std::map<std::string, Value>& slot_values,
                      Assignment& witness) {
  for (size_t i = 0; i < table.apps.size(); ++i) {
    const auto& app = table.apps[i];
    UifKey key;
    key.id = app->uif_id;
    for (const auto& a : app->args) {
      auto v = sym::eval(a, witness);
      if (!v) return false;
      key.args.push_back(*v);
    }
    auto it = slot_values.find(table.slots[i]->name);
    if (it == slot_values.end()) return false;
    witness.uif_tables[key] = it->second;
  }
  return true;
}

enum class PointResult { True, False, Undecided };

PointResult eval_point(const FormulaPtr& f, const std::map<std::string, Value>& point,
                       Assignment* witness_out) {
  FormulaPtr g = substitute_vars(f, point);
  g = sym::simplify_formula(g);
  if (sym::is_false(g)) return PointResult::False;
  SlotTable table;
  FormulaPtr h = sym::is_true(g) ? g : slotify(g, table);
  if (!sym::is_true(g)) h = sym::simplify_formula(h);
  if (sym::is_false(h)) return PointResult::False;

  Assignment witness;
  witness.vars = point;
  if (sym::is_true(h)) {
    if (witness_out) {
      std::map<std::string, Value> zero_slots;
      for (const auto& s : table.slots) {
        zero_slots[s->name] = s->type == Type::Int ? Value::of_int(0) : Value::of_real(0.0);
      }
      if (!build_uif_tables(table, zero_slots, witness)) return PointResult::Undecided;
      *witness_out = std::move(witness);
    }
    return PointResult::True;
  }

  // Residual formula over slot symbols: small grid search.
  std::vector<ExprPtr> slots;
  sym::collect_symbols(h, slots);
  if (slots.empty()) return PointResult::Undecided;
  static const std::int64_t int_grid[] = {0, 1, -1, 2, -2, 3, -3};
  static const double real_grid[] = {0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
  size_t n = slots.size();
  std::vector<size_t> idx(n, 0);
  auto grid_size = [&](size_t i) {
    return slots[i]->type == Type::Int ? std::size(int_grid) : std::size(real_grid);
  };
  int tried = 0;
  while (tried < kSlotSearchCap) {
    std::map<std::string, Value> slot_values;
    for (size_t i = 0; i < n; ++i) {
      slot_values[slots[i]->name] = slots[i]->type == Type::Int
                                        ? Value::of_int(int_grid[idx[i]])
                                        : Value::of_real(real_grid[idx[i]]);
    }
    Assignment slot_asg;
    slot_asg.vars = slot_values;
    auto v = sym::eval(h, slot_asg);
    if (v && *v) {
      if (witness_out) {
        if (!build_uif_tables(table, slot_values, witness)) return PointResult::Undecided;
        *witness_out = std::move(witness);
      }
      return PointResult::True;
    }
    ++tried;
    size_t k = 0;
    while (k < n) {
      if (++idx[k] < grid_size(k)) break;
      idx[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return PointResult::Undecided;
}

void add_int_candidate(std::vector<std::int64_t>& out, std::int64_t v, std::int64_t lo,
                       std::int64_t hi) {
  if (v < lo || v > hi) return;
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void add_real_candidate(std::vector<double>& out, double v) {
  if (!std::isfinite(v)) return;
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

SolverVerdict internal_check_sat(const sym::FormulaPtr& f, const SolverConfig& cfg,
                                 std::mt19937_64& rng, const Deadline& deadline) {
  auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    auto now = std::chrono::steady_clock::now();
    if (deadline && now >= *deadline) return true;
    return now - started > std::chrono::milliseconds(cfg.query_timeout_ms);
  };

  std::vector<ExprPtr> symbols;
  sym::collect_symbols(f, symbols);
  std::sort(symbols.begin(), symbols.end(),
            [](const ExprPtr& a, const ExprPtr& b) { return a->name < b->name; });

  auto bounds = sym::extract_bounds(f);

  // Exhaustive refutation is possible only over an int-only box that the
  // formula itself pins inside the configured domain.
  bool exhaustive = true;
  std::int64_t point_count = 1;
  for (const auto& s : symbols) {
    if (s->type == Type::Real) {
      exhaustive = false;
      break;
    }
    auto it = bounds.find(s->name);
    if (it == bounds.end() || !it->second.lo || !it->second.hi) {
      exhaustive = false;
      break;
    }
    std::int64_t lo = it->second.lo->num();
    std::int64_t hi = it->second.hi->num();
    if (lo < cfg.int_lo || hi > cfg.int_hi) {
      exhaustive = false;
      break;
    }
    if (hi < lo) {
      point_count = 0;
      continue;
    }
    std::int64_t width = hi - lo + 1;
    if (point_count > kExhaustiveCap / width) {
      exhaustive = false;
      break;
    }
    point_count *= width;
  }

  // Candidate values per variable.
  std::vector<std::vector<Value>> candidates(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    const auto& s = symbols[i];
    auto bit = bounds.find(s->name);
    if (s->type == Type::Int) {
      std::int64_t lo = cfg.int_lo, hi = cfg.int_hi;
      if (bit != bounds.end()) {
        if (bit->second.lo) lo = std::max(lo, bit->second.lo->num());
        if (bit->second.hi) hi = std::min(hi, bit->second.hi->num());
      }
      std::vector<std::int64_t> vals;
      if (exhaustive) {
        for (std::int64_t v = lo; v <= hi; ++v) vals.push_back(v);
      } else {
        if (bit != bounds.end()) {
          if (bit->second.lo) {
            for (std::int64_t d = 0; d <= 2; ++d) {
              add_int_candidate(vals, bit->second.lo->num() + d, cfg.int_lo, cfg.int_hi);
            }
          }
          if (bit->second.hi) {
            for (std::int64_t d = 0; d <= 2; ++d) {
              add_int_candidate(vals, bit->second.hi->num() - d, cfg.int_lo, cfg.int_hi);
            }
          }
        }
        for (std::int64_t v : {0LL, 1LL, -1LL, 2LL, -2LL, 3LL, -3LL, 5LL, -5LL, 10LL, -10LL,
                               20LL, -20LL, 50LL, -50LL, 100LL, -100LL}) {
          add_int_candidate(vals, v, lo, hi);
        }
        if (vals.empty()) add_int_candidate(vals, lo, cfg.int_lo, cfg.int_hi);
      }
      auto& out = candidates[i];
      out.reserve(vals.size());
      for (auto v : vals) out.push_back(Value::of_int(v));
    } else {
      std::vector<double> vals;
      if (bit != bounds.end()) {
        if (bit->second.lo) {
          double b = bit->second.lo->to_double();
          for (double d : {0.0, 0.5, 1.0, 2.0}) add_real_candidate(vals, b + d);
        }
        if (bit->second.hi) {
          double b = bit->second.hi->to_double();
          for (double d : {0.0, 0.5, 1.0, 2.0}) add_real_candidate(vals, b - d);
        }
      }
      for (double v : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.25, -3.25, 7.5, -7.5, 10.0,
                       -10.0, 100.0, -100.0}) {
        add_real_candidate(vals, v);
      }
      std::uniform_real_distribution<double> dist(-50.0, 50.0);
      for (int k = 0; k < cfg.real_samples; ++k) add_real_candidate(vals, dist(rng));
      auto& out = candidates[i];
      out.reserve(vals.size());
      for (auto v : vals) out.push_back(Value::of_real(v));
    }
  }

  // Odometer enumeration, deterministic order.
  std::int64_t total = 1;
  for (const auto& c : candidates) {
    if (c.empty()) return SolverVerdict{Sat::Unknown, std::nullopt};
    if (total > (exhaustive ? kExhaustiveCap : kSearchCap) / (std::int64_t)c.size()) {
      total = exhaustive ? kExhaustiveCap + 1 : kSearchCap + 1;
      break;
    }
    total *= (std::int64_t)c.size();
  }
  if (exhaustive && total > kExhaustiveCap) exhaustive = false;
  std::int64_t budget = exhaustive ? kExhaustiveCap : std::min(total, kSearchCap);

  std::vector<size_t> idx(symbols.size(), 0);
  bool all_false = true;
  std::int64_t visited = 0;
  while (visited < budget) {
    if ((visited & 1023) == 0 && out_of_time()) return SolverVerdict{Sat::Unknown, std::nullopt};
    std::map<std::string, Value> point;
    for (size_t i = 0; i < symbols.size(); ++i) point[symbols[i]->name] = candidates[i][idx[i]];
    Assignment witness;
    PointResult r = eval_point(f, point, &witness);
    if (r == PointResult::True) {
      auto check = sym::eval(f, witness);
      if (check && *check) return SolverVerdict{Sat::Sat, std::move(witness)};
      all_false = false;  // inconsistent evaluation; give up on refutation
    } else if (r == PointResult::Undecided) {
      all_false = false;
    }
    ++visited;
    size_t k = 0;
    while (k < symbols.size()) {
      if (++idx[k] < candidates[k].size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == symbols.size()) break;
    if (symbols.empty()) break;
  }

  if (exhaustive && all_false && visited >= std::min(total, budget)) {
    return SolverVerdict{Sat::Unsat, std::nullopt};
  }
  return SolverVerdict{Sat::Unknown, std::nullopt};
}

}  // namespace pasda::solver
