#include "rectexplain/tree1d.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace rectexplain {

namespace {

struct CostProfile {
  long long default_cost = 0;
  std::map<Rational, long long> exceptional;  // value -> cost strictly below default

  long long at(const Rational& t) const {
    auto it = exceptional.find(t);
    return it == exceptional.end() ? default_cost : it->second;
  }

  long long best() const {
    long long b = default_cost;
    for (const auto& [t, c] : exceptional)
      if (c < b) b = c;
    return b;
  }

  // Smallest value achieving best(). Every profile built below has a nonempty
  // exceptional map whose minimum is strictly below default_cost, so the best
  // is always attained at an exceptional point.
  const Rational& best_point() const {
    assert(!exceptional.empty());
    const Rational* arg = nullptr;
    long long b = 0;
    for (const auto& [t, c] : exceptional)
      if (arg == nullptr || c < b) {
        arg = &t;
        b = c;
      }
    return *arg;
  }
};

CostProfile leaf_profile(const Rational& value) {
  CostProfile p;
  p.default_cost = 1;
  p.exceptional[value] = 0;
  return p;
}

// g_v = sum of child profiles; support is the union of the children's supports.
CostProfile sum_profiles(const std::vector<const CostProfile*>& children) {
  CostProfile g;
  for (const auto* c : children) g.default_cost += c->default_cost;
  std::map<Rational, long long> candidates;
  for (const auto* c : children)
    for (const auto& [t, unused] : c->exceptional) candidates[t] = 0;
  for (auto& [t, total] : candidates) {
    for (const auto* c : children) total += c->at(t);
    if (total < g.default_cost) g.exceptional[t] = total;
  }
  return g;
}

CostProfile cap_with_reset(const CostProfile& g) {
  CostProfile f;
  const long long reset = 1 + g.best();
  f.default_cost = std::min(g.default_cost, reset);
  for (const auto& [t, c] : g.exceptional) {
    const long long v = std::min(c, reset);
    if (v < f.default_cost) f.exceptional[t] = v;
  }
  return f;
}

}  // namespace

NodeWeighting solve_opt1(const Hierarchy& tree, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != tree.leaf_count())
    throw std::invalid_argument("vector length != leaf count");
  const int n = tree.node_count();

  // Post-order over node ids. Children ids are always larger than the parent's
  // (Builder invariant), so descending id order is a valid post-order.
  std::vector<CostProfile> f(n), g(n);
  for (int u = n - 1; u >= 0; --u) {
    const auto& nd = tree.node(u);
    if (nd.children.empty()) {
      f[u] = leaf_profile(v[nd.leaf_lo - 1]);
    } else {
      std::vector<const CostProfile*> ch;
      ch.reserve(nd.children.size());
      for (int c : nd.children) ch.push_back(&f[c]);
      g[u] = sum_profiles(ch);
      f[u] = cap_with_reset(g[u]);
    }
  }

  // Top-down reconstruction from offset 0 at the root.
  NodeWeighting result;
  std::vector<std::pair<int, Rational>> stack{{tree.root(), Rational(0)}};
  while (!stack.empty()) {
    auto [u, t] = stack.back();
    stack.pop_back();
    const auto& nd = tree.node(u);
    if (nd.children.empty()) {
      const Rational w = v[nd.leaf_lo - 1] - t;
      if (w != 0) result.weights[u] = w;
      continue;
    }
    Rational next = t;
    const long long reset = 1 + g[u].best();
    if (g[u].at(t) > reset) {  // pay 1 here; ties go to weight 0
      next = g[u].best_point();
      result.weights[u] = next - t;
    }
    for (int c : nd.children) stack.push_back({c, next});
  }

  // Path-sum feasibility is the defining invariant; a failure is a bug.
  for (int leaf = 1; leaf <= tree.leaf_count(); ++leaf) {
    Rational sum = 0;
    for (int u = tree.leaf_node(leaf); u != -1; u = tree.node(u).parent) {
      auto it = result.weights.find(u);
      if (it != result.weights.end()) sum += it->second;
    }
    if (sum != v[leaf - 1]) throw std::logic_error("solve_opt1 produced an infeasible weighting");
  }
  return result;
}

int opt1_cost(const Hierarchy& tree, const std::vector<Rational>& v) {
  return solve_opt1(tree, v).cost();
}

}  // namespace rectexplain
