#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pasda/minilang/ast.hpp"

namespace pasda::diffmatch {

enum class Side { V1, V2 };

// Pairs of statement ids (v1, v2) whose normalized text is identical.
// Statements inside control structures are paired only when their enclosing
// headers are paired too.
struct MatchSet {
  std::vector<std::pair<int, int>> pairs;
};

MatchSet match_unchanged(const minilang::FunctionDef& v1, const minilang::FunctionDef& v2);

using UifId = int;

// One abstraction site. Matched statements with identical normalized text
// share one UifId, so the two occurrence counts can differ when one side
// repeats the text more often than the other.
struct UifSite {
  UifId id = 0;
  std::vector<std::pair<int, int>> replaced;  // matched statement id pairs
  std::vector<std::string> input_vars;        // live-in reads, textual order
  std::string output_var;
  std::vector<minilang::Ty> input_types;
  minilang::Ty output_type = minilang::Ty::Int;
  int occurrences_v1 = 0;
  int occurrences_v2 = 0;
  int loop_depth = 0;       // loop nesting of the v1 instance
  int nonlinear_count = 0;  // nonlinear arithmetic ops replaced
};

struct RefinementState {
  std::set<UifId> excluded;  // permanently refined sites
  int iteration = 1;
};

// Computes the match set and abstraction plan for a program pair once;
// apply() produces the abstracted variant for an iteration.
class Abstraction {
public:
  Abstraction(const minilang::FunctionDef& v1, const minilang::FunctionDef& v2);

  const MatchSet& matches() const { return matches_; }
  const std::vector<UifSite>& sites() const { return sites_; }

  // Iteration 1 returns the function unchanged. From iteration 2 on, every
  // matched abstractable statement whose site is not excluded becomes
  // `out = uif_k(live-ins)`.
  minilang::FunctionDef apply(Side side, const RefinementState& state) const;

  std::vector<UifSite> active_sites(const RefinementState& state) const;

private:
  minilang::FunctionDef v1_, v2_;
  MatchSet matches_;
  std::vector<UifSite> sites_;
  std::map<int, UifId> stmt_to_uif_v1_;
  std::map<int, UifId> stmt_to_uif_v2_;
};

}  // namespace pasda::diffmatch
