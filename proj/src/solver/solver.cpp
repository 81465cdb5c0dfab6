#include "pasda/solver/solver.hpp"

#include "pasda/solver/smtlib.hpp"
#include "pasda/sym/normalize.hpp"

namespace pasda::solver {

const char* to_string(Sat v) {
  switch (v) {
    case Sat::Sat: return "SAT";
    case Sat::Unsat: return "UNSAT";
    case Sat::Unknown: return "UNKNOWN";
  }
  return "?";
}

sym::FormulaPtr simplify(const sym::FormulaPtr& f) { return sym::simplify_formula(f); }

bool has_hard_terms(const sym::FormulaPtr& f) { return sym::has_transcendental(f); }

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  if (cfg_.backend != Backend::Internal) {
    external_ = std::make_unique<ExternalBackend>(cfg_.solver_bin, cfg_.solver_args,
                                                  cfg_.query_log_path);
  }
}

Solver::~Solver() = default;

SolverVerdict Solver::check_sat(const sym::FormulaPtr& f) {
  ++query_count_;
  auto simplified = simplify(f);
  if (sym::is_true(simplified)) return SolverVerdict{Sat::Sat, std::nullopt};
  if (sym::is_false(simplified)) return SolverVerdict{Sat::Unsat, std::nullopt};
  if (has_hard_terms(simplified)) return SolverVerdict{Sat::Unknown, std::nullopt};
  if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
    return SolverVerdict{Sat::Unknown, std::nullopt};
  }

  if (cfg_.backend == Backend::Internal) {
    return internal_check_sat(simplified, cfg_, rng_, deadline_);
  }
  SolverVerdict v = external_->check(simplified, cfg_.query_timeout_ms, deadline_);
  if (v.value == Sat::Unknown && cfg_.backend == Backend::ExternalThenInternal) {
    return internal_check_sat(simplified, cfg_, rng_, deadline_);
  }
  return v;
}

}  // namespace pasda::solver
