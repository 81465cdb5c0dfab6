#pragma once

#include <optional>
#include <string>

#include "pasda/solver/solver.hpp"
#include "pasda/sym/expr.hpp"

namespace pasda::solver {

// Renders one complete SMT-LIB v2 query (options, declarations, truncating
// div/mod definitions, assertion, check-sat) for the given formula.
// Program symbols are prefixed with "v_"; UIFs become declare-fun symbols
// with congruence. Returns nullopt when the formula cannot be rendered
// exactly (e.g. non-finite real constants).
std::optional<std::string> emit_smtlib_query(const sym::FormulaPtr& f, int timeout_ms);

// One solver subprocess per handle, speaking SMT-LIB text on stdin/stdout.
// A query that times out kills the process; the next query respawns it.
class ExternalBackend {
public:
  ExternalBackend(std::string bin, std::vector<std::string> args, std::string query_log_path);
  ~ExternalBackend();

  ExternalBackend(const ExternalBackend&) = delete;
  ExternalBackend& operator=(const ExternalBackend&) = delete;

  // Throws BackendUnavailable when the process cannot be spawned.
  SolverVerdict check(const sym::FormulaPtr& f, int timeout_ms, const Deadline& deadline);

private:
  struct Process;

  void ensure_process();
  void kill_process();

  std::string bin_;
  std::vector<std::string> args_;
  std::string query_log_path_;
  std::unique_ptr<Process> proc_;
};

}  // namespace pasda::solver
