#pragma once

#include <map>
#include <vector>

#include "rectexplain/model.hpp"
#include "rectexplain/rational.hpp"

namespace rectexplain {

// A weighting of tree nodes; for every leaf, the weights along its root-to-leaf
// path (inclusive) sum to the target vector entry. Only nonzero weights are
// stored, so cost() is the objective value.
struct NodeWeighting {
  std::map<int, Rational> weights;  // node id -> nonzero weight

  int cost() const { return static_cast<int>(weights.size()); }
};

// Exact minimum-cost solver for the 1-D tree problem: the fewest weighted tree
// nodes whose path sums reproduce v. Bottom-up DP over cost profiles
//   f_v(t) = min nonzeros in v's subtree given the strict-ancestor sum is t,
// which is constant except at finitely many t (a subset of the leaf values in
// the subtree), so profiles stay small and the whole run is O(n * depth) map
// operations. Leaf: f_l(t) = [t != v_l]. Internal, children c:
//   g_v(t) = sum_c f_c(t);  f_v(t) = min(g_v(t), 1 + min_t' g_v(t')).
// Reconstruction is top-down, ties broken toward weight 0, and the paid offset
// is the smallest-valued minimizer, so output is deterministic.
//
// Throws std::invalid_argument if v's length differs from the leaf count.
NodeWeighting solve_opt1(const Hierarchy& tree, const std::vector<Rational>& v);

int opt1_cost(const Hierarchy& tree, const std::vector<Rational>& v);

}  // namespace rectexplain
