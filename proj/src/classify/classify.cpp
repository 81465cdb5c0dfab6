#include "pasda/classify/classify.hpp"

#include <algorithm>

namespace pasda::classify {

using solver::Sat;

const char* to_string(ReachClass c) {
  switch (c) {
    case ReachClass::Reachable: return "REACHABLE";
    case ReachClass::MaybeReachable: return "MAYBE_REACHABLE";
    case ReachClass::Unreachable: return "UNREACHABLE";
  }
  return "?";
}

const char* to_string(OutputClass c) {
  switch (c) {
    case OutputClass::Eq: return "EQ";
    case OutputClass::Neq: return "NEQ";
    case OutputClass::MaybeEq: return "MAYBE_EQ";
    case OutputClass::MaybeNeq: return "MAYBE_NEQ";
    case OutputClass::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(PartitionClass c) {
  switch (c) {
    case PartitionClass::Eq: return "EQ";
    case PartitionClass::Neq: return "NEQ";
    case PartitionClass::MaybeEq: return "MAYBE_EQ";
    case PartitionClass::MaybeNeq: return "MAYBE_NEQ";
    case PartitionClass::Unknown: return "UNKNOWN";
    case PartitionClass::DepthLimited: return "DEPTH_LIMITED";
  }
  return "?";
}

const char* to_string(ProgramClass c) {
  switch (c) {
    case ProgramClass::Eq: return "EQ";
    case ProgramClass::Neq: return "NEQ";
    case ProgramClass::MaybeEq: return "MAYBE_EQ";
    case ProgramClass::MaybeNeq: return "MAYBE_NEQ";
    case ProgramClass::Unknown: return "UNKNOWN";
    case ProgramClass::DepthLimited: return "DEPTH_LIMITED";
    case ProgramClass::Timeout: return "TIMEOUT";
    case ProgramClass::Error: return "ERROR";
  }
  return "?";
}

ReachClass reachability_from_verdict(bool uif_in_pc, Sat pc_verdict) {
  if (pc_verdict == Sat::Unsat) return ReachClass::Unreachable;
  if (!uif_in_pc && pc_verdict == Sat::Sat) return ReachClass::Reachable;
  return ReachClass::MaybeReachable;
}

OutputClass output_from_verdicts(bool uif_in_effects, Sat neq_query, Sat eq_query) {
  if (neq_query == Sat::Unsat) return OutputClass::Eq;
  if (neq_query == Sat::Unknown) {
    switch (eq_query) {
      case Sat::Sat: return OutputClass::MaybeEq;
      case Sat::Unsat: return OutputClass::Neq;
      case Sat::Unknown: return OutputClass::Unknown;
    }
  }
  // neq_query == Sat
  if (!uif_in_effects) return OutputClass::Neq;
  switch (eq_query) {
    case Sat::Sat: return OutputClass::MaybeNeq;
    case Sat::Unsat: return OutputClass::Neq;
    case Sat::Unknown: return OutputClass::MaybeNeq;
  }
  return OutputClass::Unknown;
}

ReachClass classify_reachability(const sym::FormulaPtr& pc, bool uif_in_pc,
                                 solver::SatOracle& solver) {
  return reachability_from_verdict(uif_in_pc, solver.check_sat(pc).value);
}

sym::FormulaPtr neq_query(const sym::FormulaPtr& pc, const sym::ExprPtr& v1,
                          const sym::ExprPtr& v2) {
  return sym::conj({pc, sym::cmp(sym::CmpOp::Ne, v1, v2)});
}

sym::FormulaPtr eq_query(const sym::FormulaPtr& pc, const sym::ExprPtr& v1,
                         const sym::ExprPtr& v2) {
  return sym::conj({pc, sym::cmp(sym::CmpOp::Eq, v1, v2)});
}

OutputResult classify_output(const sym::FormulaPtr& pc, const product::SymEffect& e1,
                             const product::SymEffect& e2, bool uif_in_effects,
                             solver::SatOracle& solver) {
  using Kind = product::SymEffect::Kind;
  OutputResult out;
  if (e1.kind == Kind::Thrown || e2.kind == Kind::Thrown) {
    out.queries_bypassed = true;
    bool same = e1.kind == Kind::Thrown && e2.kind == Kind::Thrown &&
                e1.error_name == e2.error_name;
    out.cls = same ? OutputClass::Eq : OutputClass::Neq;
    return out;
  }

  auto neq_verdict = solver.check_sat(neq_query(pc, e1.value, e2.value));
  if (neq_verdict.value == Sat::Unsat) {
    out.cls = OutputClass::Eq;
    return out;
  }
  if (neq_verdict.value == Sat::Sat) {
    out.neq_witness = std::move(neq_verdict.witness);
    if (!uif_in_effects) {
      out.cls = OutputClass::Neq;
      return out;
    }
    auto eq_verdict = solver.check_sat(eq_query(pc, e1.value, e2.value));
    out.cls = eq_verdict.value == Sat::Unsat ? OutputClass::Neq : OutputClass::MaybeNeq;
    return out;
  }
  // NEQ-query unknown
  auto eq_verdict = solver.check_sat(eq_query(pc, e1.value, e2.value));
  switch (eq_verdict.value) {
    case Sat::Sat: out.cls = OutputClass::MaybeEq; break;
    case Sat::Unsat: out.cls = OutputClass::Neq; break;
    case Sat::Unknown: out.cls = OutputClass::Unknown; break;
  }
  return out;
}

PartitionClass overall_partition(ReachClass reach, OutputClass out) {
  if (reach == ReachClass::MaybeReachable && out == OutputClass::Neq) {
    return PartitionClass::MaybeNeq;
  }
  switch (out) {
    case OutputClass::Eq: return PartitionClass::Eq;
    case OutputClass::Neq: return PartitionClass::Neq;
    case OutputClass::MaybeEq: return PartitionClass::MaybeEq;
    case OutputClass::MaybeNeq: return PartitionClass::MaybeNeq;
    case OutputClass::Unknown: return PartitionClass::Unknown;
  }
  return PartitionClass::Unknown;
}

ProgramClass aggregate_program(const std::vector<PartitionClass>& partitions, bool complete) {
  auto has = [&](PartitionClass c) {
    return std::find(partitions.begin(), partitions.end(), c) != partitions.end();
  };
  bool all_eq = !partitions.empty() &&
                std::all_of(partitions.begin(), partitions.end(),
                            [](PartitionClass c) { return c == PartitionClass::Eq; });
  if (complete && all_eq) return ProgramClass::Eq;
  bool some_eqish = has(PartitionClass::Eq) || has(PartitionClass::MaybeEq);
  bool some_neqish = has(PartitionClass::Neq) || has(PartitionClass::MaybeNeq);
  if (some_eqish && !some_neqish) return ProgramClass::MaybeEq;
  if (has(PartitionClass::Neq)) return ProgramClass::Neq;
  if (has(PartitionClass::MaybeNeq)) return ProgramClass::MaybeNeq;
  if (has(PartitionClass::Unknown)) return ProgramClass::Unknown;
  return ProgramClass::DepthLimited;
}

}  // namespace pasda::classify
