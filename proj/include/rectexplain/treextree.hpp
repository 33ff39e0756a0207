#pragma once

#include <map>
#include <vector>

#include "rectexplain/model.hpp"
#include "rectexplain/rng.hpp"

namespace rectexplain {

// One random root-to-leaf choice per internal node of the column tree.
struct PathSample {
  std::map<int, int> chosen_child;  // internal node -> chosen child id
  std::map<int, int> reached_leaf;  // every node -> leaf node id it walks to
};

// Draws each internal node's child uniformly and independently, in a fixed
// preorder traversal, so the sample is reproducible from the seed.
PathSample sample_paths(const Hierarchy& col_tree, Rng& rng);

// The randomized Tree x Tree solver. Column trees are normalized (single-child
// chains collapsed) before sampling; for the root it emits the exact 1-D
// solution of the reached-leaf column across all columns, and for every other
// column node u the exact 1-D solution of the difference between u's reached
// column and its parent's, across u's leaf interval. Difference vectors that
// are zero (always the case for the chosen child) contribute nothing. The
// output verifies and every rectangle is tree-allowed.
Explanation explain_tree_x_tree(const TreeInstance& inst, Rng& rng);

// Minimum-cost explanation over `trials` independent runs seeded by
// rng.fork(0), rng.fork(1), ...; ties keep the earliest.
Explanation best_of_seeds(const TreeInstance& inst, int trials, const Rng& rng);

// Runs the solver on the instance and on its transpose with the same derived
// seed, transposes the latter back, and keeps the cheaper (ties keep the
// direct orientation).
Explanation explain_transposed_best(const TreeInstance& inst, const Rng& rng);

// Analysis helper (used by tests): groups an explanation's terms by the column
// node owning their column interval and sums them into per-node column
// vectors. Requires every term's column interval to be a column-tree interval.
std::map<int, std::vector<Rational>> column_vector_set(const Explanation& e,
                                                       const TreeInstance& inst);

}  // namespace rectexplain
