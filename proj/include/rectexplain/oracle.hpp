#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rectexplain/model.hpp"
#include "rectexplain/zwp.hpp"

namespace rectexplain {

enum class OracleStatus { optimal, budget_exceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::optimal;
  std::optional<Explanation> explanation;  // witness for the matrix oracles
  std::optional<ZeroPartition> partition;  // witness for oracle_zwp
  std::optional<int> cost;                 // certified minimum when optimal
  // Subset sizes exhausted without a solution (so OPT >= this even when the
  // budget ran out before certifying).
  int proven_lower_bound = 0;
  std::uint64_t subsets_examined = 0;  // enumeration nodes + linear solves
};

// Exact rational weights making the rectangles sum to `a` at every cell, or
// nullopt when infeasible. One equation per cell, one unknown per rectangle,
// solved by fraction-free (Bareiss) elimination; free variables are set to
// zero, so the result is deterministic. Any returned assignment is re-checked
// through verify() before it is returned. Throws std::invalid_argument on a
// rectangle outside the matrix.
std::optional<std::vector<Rational>> exact_weights_for(const std::vector<Rectangle>& rects,
                                                       const Matrix& a);

// Candidate families in canonical (i1, j1, i2, j2) order.
std::vector<Rectangle> all_rectangles(int m, int n);
std::vector<Rectangle> allowed_tree_rectangles(const TreeInstance& inst);  // deduplicated

// Smallest feasible subset of `allowed`, by enumerating subset sizes upward
// from k_start (pass a valid external lower bound such as corner_lower_bound,
// or 0). The first feasible size is optimal. Subtrees that provably cannot
// cancel some grid-corner of `a` are pruned, which never skips a feasible
// subset. `budget` caps search effort (nodes visited + systems solved); on
// exhaustion the result is budget_exceeded and carries no cost. k_max < 0
// defaults to min(|allowed|, m*n).
OracleResult oracle_min_explanation(const Matrix& a, const std::vector<Rectangle>& allowed,
                                    int k_max = -1, std::uint64_t budget = 10'000'000,
                                    int k_start = 0);

// Certified-optimal zero-weight partition by subset DP over the nonzero items
// (zero items are free singletons). Worst case 3^r for r nonzero items;
// throws limit_error when r exceeds `limit`.
OracleResult oracle_zwp(const DeltaProfile& d, int limit = 20);

// Core of oracle_zwp, exposed for the step-1 exchange tests: the maximum
// number of parts in any partition of `values` (which must sum to zero) into
// zero-sum parts. Optionally returns the parts as index lists into `values`.
int max_zero_sum_parts(const std::vector<Rational>& values, int limit,
                       std::vector<std::vector<int>>* parts = nullptr);

// oracle_min_explanation specialised to the 1-D tree problem: the matrix is
// the m x 1 column holding v and the family is the tree's node intervals.
OracleResult brute_force_min(const Hierarchy& tree, const std::vector<Rational>& v,
                             int k_max = -1, std::uint64_t budget = 10'000'000);

}  // namespace rectexplain
