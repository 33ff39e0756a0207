#include "rectexplain/treextree.hpp"

#include <algorithm>
#include <stdexcept>

#include "rectexplain/tree1d.hpp"

namespace rectexplain {

PathSample sample_paths(const Hierarchy& col_tree, Rng& rng) {
  PathSample sample;
  // Draw in preorder so a seed pins the whole sample.
  std::vector<int> stack{col_tree.root()};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    const auto& nd = col_tree.node(u);
    if (nd.children.empty()) continue;
    const int pick = static_cast<int>(rng.below(nd.children.size()));
    sample.chosen_child[u] = nd.children[pick];
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it) stack.push_back(*it);
  }
  // Walk chosen children bottom-up: descending id order visits children first.
  for (int u = col_tree.node_count() - 1; u >= 0; --u) {
    auto it = sample.chosen_child.find(u);
    sample.reached_leaf[u] = it == sample.chosen_child.end() ? u : sample.reached_leaf[it->second];
  }
  return sample;
}

namespace {

int column_of(const Hierarchy& tree, int leaf_node) { return tree.node(leaf_node).leaf_lo; }

}  // namespace

Explanation explain_tree_x_tree(const TreeInstance& inst, Rng& rng) {
  const Hierarchy row_tree = inst.row_tree.normalized();
  const Hierarchy col_tree = inst.col_tree.normalized();
  const PathSample sample = sample_paths(col_tree, rng);

  std::vector<WeightedRectangle> terms;
  for (int u = 0; u < col_tree.node_count(); ++u) {
    std::vector<Rational> v;
    if (u == col_tree.root()) {
      v = inst.matrix.column(column_of(col_tree, sample.reached_leaf.at(u)));
    } else {
      const int parent = col_tree.node(u).parent;
      const int lu = sample.reached_leaf.at(u);
      const int lp = sample.reached_leaf.at(parent);
      if (lu == lp) continue;  // chosen child: difference is identically zero
      v = inst.matrix.column(column_of(col_tree, lu));
      const auto pv = inst.matrix.column(column_of(col_tree, lp));
      bool all_zero = true;
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= pv[i];
        if (v[i] != 0) all_zero = false;
      }
      if (all_zero) continue;
    }
    const auto [j1, j2] = col_tree.leaf_interval(u);
    const NodeWeighting weighting = solve_opt1(row_tree, v);
    for (const auto& [row_node, weight] : weighting.weights) {
      const auto [i1, i2] = row_tree.leaf_interval(row_node);
      terms.push_back({{i1, i2, j1, j2}, weight});
    }
  }
  return canonicalize(std::move(terms));
}

Explanation best_of_seeds(const TreeInstance& inst, int trials, const Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Explanation best;
  bool have = false;
  for (int t = 0; t < trials; ++t) {
    Rng sub = rng.fork(t);
    Explanation candidate = explain_tree_x_tree(inst, sub);
    if (!have || candidate.cost() < best.cost()) {
      best = std::move(candidate);
      have = true;
    }
  }
  return best;
}

Explanation explain_transposed_best(const TreeInstance& inst, const Rng& rng) {
  Rng direct = rng.fork(0);
  Rng flipped = rng.fork(0);  // same seed both ways
  Explanation a = explain_tree_x_tree(inst, direct);
  Explanation b = explain_tree_x_tree(inst.transposed(), flipped).transposed();
  return a.cost() <= b.cost() ? a : b;
}

std::map<int, std::vector<Rational>> column_vector_set(const Explanation& e,
                                                       const TreeInstance& inst) {
  const Hierarchy col_tree = inst.col_tree.normalized();
  std::map<std::pair<int, int>, int> node_of_interval;
  for (int u = 0; u < col_tree.node_count(); ++u)
    node_of_interval[col_tree.leaf_interval(u)] = u;

  std::map<int, std::vector<Rational>> vectors;
  const int m = inst.matrix.row_count();
  for (const auto& t : e.terms) {
    auto it = node_of_interval.find({t.rect.j1, t.rect.j2});
    if (it == node_of_interval.end())
      throw std::invalid_argument("term column interval is not a column-tree interval");
    auto& v = vectors.try_emplace(it->second, std::vector<Rational>(m)).first->second;
    for (int i = t.rect.i1; i <= t.rect.i2; ++i) v[i - 1] += t.weight;
  }
  return vectors;
}

}  // namespace rectexplain
