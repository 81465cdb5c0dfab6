#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pasda/classify/classify.hpp"
#include "pasda/product/product.hpp"
#include "pasda/solver/solver.hpp"

namespace pasda::symexec {

// One explored product path. Unreachable paths are pruned during
// exploration and never materialize; depth-limited records carry only the
// path condition and the coverage reached so far.
struct PartitionRecord {
  int index = 0;  // 1-based, emission order
  sym::FormulaPtr pc;
  std::optional<product::SymEffect> effect_v1;
  std::optional<product::SymEffect> effect_v2;
  std::vector<int> covered_v1;
  std::vector<int> covered_v2;
  bool uif_in_pc = false;
  bool uif_in_effects = false;
  bool hard_terms_present = false;
  classify::ReachClass reach = classify::ReachClass::Reachable;
  std::optional<classify::OutputClass> output_class;
  classify::PartitionClass overall = classify::PartitionClass::Unknown;
  bool depth_limited = false;
  std::optional<sym::Assignment> witness;  // concrete inputs for NEQ partitions
};

enum class ExploreStatus { Complete, DeadlineHit };

struct ExploreStats {
  std::chrono::nanoseconds classify_time{};
  std::int64_t decisions = 0;
  std::int64_t steps = 0;
};

struct ExploreResult {
  std::vector<PartitionRecord> records;
  ExploreStatus status = ExploreStatus::Complete;
  ExploreStats stats;
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error("internal error: " + msg) {}
};

struct ExploreOptions {
  int depth_limit = 10;
  solver::Deadline deadline;
  std::int64_t step_fuel = 2'000'000;
};

// Depth-first exploration of the product unit. Both arms of every symbolic
// branch decision are attempted; arms with unsatisfiable path conditions are
// pruned silently. A path attempting decision depth_limit+1 stops with that
// decision's constraint appended and yields a depth-limited record. On
// deadline the records completed so far are returned with DeadlineHit.
ExploreResult explore(const product::ProductUnit& unit, const ExploreOptions& opts,
                      solver::SatOracle& solver);

}  // namespace pasda::symexec
