#pragma once

#include <optional>
#include <vector>

#include "pasda/product/product.hpp"
#include "pasda/solver/solver.hpp"
#include "pasda/sym/expr.hpp"

namespace pasda::classify {

enum class ReachClass { Reachable, MaybeReachable, Unreachable };
enum class OutputClass { Eq, Neq, MaybeEq, MaybeNeq, Unknown };
enum class PartitionClass { Eq, Neq, MaybeEq, MaybeNeq, Unknown, DepthLimited };
enum class ProgramClass { Eq, Neq, MaybeEq, MaybeNeq, Unknown, DepthLimited, Timeout, Error };

const char* to_string(ReachClass c);
const char* to_string(OutputClass c);
const char* to_string(PartitionClass c);
const char* to_string(ProgramClass c);

// Reachability table: (UIF in pc, pc-query verdict) -> class.
ReachClass reachability_from_verdict(bool uif_in_pc, solver::Sat pc_verdict);

// Output table: (UIF in effects, NEQ-query, EQ-query) -> class. This is the
// full-table reference; classify_output below evaluates the queries lazily.
OutputClass output_from_verdicts(bool uif_in_effects, solver::Sat neq_query, solver::Sat eq_query);

ReachClass classify_reachability(const sym::FormulaPtr& pc, bool uif_in_pc,
                                 solver::SatOracle& solver);

struct OutputResult {
  OutputClass cls = OutputClass::Unknown;
  std::optional<sym::Assignment> neq_witness;  // from a SAT NEQ-query
  bool queries_bypassed = false;               // exception comparison
};

// Thrown effects compare by error name only, bypassing the solver. For
// return/return the NEQ-query runs first and the EQ-query only when the
// table needs it.
OutputResult classify_output(const sym::FormulaPtr& pc, const product::SymEffect& e1,
                             const product::SymEffect& e2, bool uif_in_effects,
                             solver::SatOracle& solver);

// Maybe-reachable non-equivalence cannot be shown on a concrete run, so it
// weakens to maybe.
PartitionClass overall_partition(ReachClass reach, OutputClass out);

// Program-level aggregation: Eq only for complete all-Eq runs; Maybe_Eq when
// some partition is (maybe) equivalent and none contradicts; otherwise the
// highest-priority partition wins (Neq > Maybe_Neq > Unknown > Depth_Limited).
ProgramClass aggregate_program(const std::vector<PartitionClass>& partitions, bool complete);

// NEQ-query / EQ-query construction (shared with the refinement heuristics).
sym::FormulaPtr neq_query(const sym::FormulaPtr& pc, const sym::ExprPtr& v1,
                          const sym::ExprPtr& v2);
sym::FormulaPtr eq_query(const sym::FormulaPtr& pc, const sym::ExprPtr& v1,
                         const sym::ExprPtr& v2);

}  // namespace pasda::classify
