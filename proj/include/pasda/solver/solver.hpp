#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pasda/sym/eval.hpp"
#include "pasda/sym/expr.hpp"

namespace pasda::solver {

enum class Sat { Sat, Unsat, Unknown };

const char* to_string(Sat v);

struct SolverVerdict {
  Sat value = Sat::Unknown;
  std::optional<sym::Assignment> witness;  // Sat only, when available
};

enum class Backend { External, Internal, ExternalThenInternal };

struct SolverConfig {
  Backend backend = Backend::Internal;
  int query_timeout_ms = 2000;
  std::int64_t int_lo = -100;  // internal int enumeration domain
  std::int64_t int_hi = 100;
  int real_samples = 16;  // internal real sample count per variable
  std::uint64_t seed = 1;
  std::string solver_bin;  // external backend binary
  std::vector<std::string> solver_args;
  std::string query_log_path;  // verbatim SMT-LIB query log when nonempty
};

struct BackendUnavailable : std::runtime_error {
  explicit BackendUnavailable(const std::string& msg)
      : std::runtime_error("solver backend unavailable: " + msg) {}
};

// Satisfiability oracle interface; the classifier and engine take this so
// tests can script verdicts.
class SatOracle {
public:
  virtual ~SatOracle() = default;
  virtual SolverVerdict check_sat(const sym::FormulaPtr& f) = 0;
};

// Equivalence-preserving simplification (see sym::simplify_formula).
sym::FormulaPtr simplify(const sym::FormulaPtr& f);

// True iff a transcendental application (tan/sin/cos/log, pow with
// non-constant exponent) remains after simplification. Such formulas are
// never decided by the backends: models that assign transcendental terms
// freely are not trusted.
bool has_hard_terms(const sym::FormulaPtr& f);

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Internal bounded brute-force backend. Expects a simplified, non-literal,
// hard-term-free formula. Returns Sat with a checked witness when a point in
// the enumeration domain satisfies the formula; Unsat only when the formula
// itself bounds every variable (ints only) inside the enumeration domain and
// the full domain refutes it; Unknown otherwise.
SolverVerdict internal_check_sat(const sym::FormulaPtr& f, const SolverConfig& cfg,
                                 std::mt19937_64& rng, const Deadline& deadline);

class ExternalBackend;

class Solver : public SatOracle {
public:
  explicit Solver(SolverConfig cfg);
  ~Solver() override;

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SolverVerdict check_sat(const sym::FormulaPtr& f) override;

  // Cooperative global deadline shared with the run; queries past the
  // deadline return Unknown.
  void set_deadline(Deadline d) { deadline_ = d; }

  const SolverConfig& config() const { return cfg_; }
  std::int64_t query_count() const { return query_count_; }

private:
  SolverConfig cfg_;
  Deadline deadline_;
  std::mt19937_64 rng_;
  std::unique_ptr<ExternalBackend> external_;
  std::int64_t query_count_ = 0;
};

}  // namespace pasda::solver
