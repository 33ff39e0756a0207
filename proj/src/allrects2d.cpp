#include "rectexplain/allrects2d.hpp"

#include <stdexcept>

#include "rectexplain/oracle.hpp"

namespace rectexplain {

CornerGrid::CornerGrid(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  delta_.resize(static_cast<std::size_t>(m + 1) * (n + 1));
}

const Rational& CornerGrid::delta(int i, int j) const {
  if (i < 0 || i > m_ || j < 0 || j > n_) throw std::out_of_range("grid index");
  return delta_[static_cast<std::size_t>(i) * (n_ + 1) + j];
}

Rational& CornerGrid::delta(int i, int j) {
  if (i < 0 || i > m_ || j < 0 || j > n_) throw std::out_of_range("grid index");
  return delta_[static_cast<std::size_t>(i) * (n_ + 1) + j];
}

int CornerGrid::corner_count() const {
  int count = 0;
  for (const auto& d : delta_)
    if (d != 0) ++count;
  return count;
}

int CornerGrid::interior_corner_count() const {
  int count = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j)
      if (delta(i, j) != 0) ++count;
  return count;
}

std::vector<std::pair<int, int>> CornerGrid::corners() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= m_; ++i)
    for (int j = 0; j <= n_; ++j)
      if (delta(i, j) != 0) out.push_back({i, j});
  return out;
}

DeltaProfile CornerGrid::line_profile(int i) const {
  if (i < 0 || i > m_) throw std::out_of_range("grid line");
  DeltaProfile p;
  p.deltas.resize(n_ + 1);
  for (int j = 0; j <= n_; ++j) p.deltas[j] = delta(i, j);
  return p;
}

CornerGrid compute_corners(const Matrix& a) {
  const int m = a.row_count(), n = a.col_count();
  CornerGrid grid(m, n);
  auto cell = [&](int i, int j) -> Rational {
    if (i < 1 || i > m || j < 1 || j > n) return Rational(0);
    return a.at(i, j);
  };
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      grid.delta(i, j) = cell(i, j) - cell(i, j + 1) + cell(i + 1, j + 1) - cell(i + 1, j);
  return grid;
}

Explanation explain_all_rects(const Matrix& a, Strategy strategy, Rng& rng,
                              const ZwpOptions& options) {
  const int m = a.row_count();
  const CornerGrid grid = compute_corners(a);
  std::vector<WeightedRectangle> terms;
  for (int i = 0; i < m; ++i) {
    const DeltaProfile profile = grid.line_profile(i);
    if (profile.nonzero_count() == 0) continue;
    Rng line_rng = rng.fork(i);
    const ZwpSolution sol = solve_zwp(profile, strategy, line_rng, options);
    for (const auto& iv : partition_to_intervals(sol.partition, profile))
      terms.push_back({{i + 1, m, iv.lo, iv.hi}, iv.weight});
  }
  Explanation e = canonicalize(std::move(terms));
  if (matrix_of(e, m, a.col_count()) != a)
    throw std::logic_error("explain_all_rects left a nonzero residual");
  return e;
}

namespace {

// First interior corner of the residual in row-major order, or {-1, -1}.
std::pair<int, int> first_interior_corner(const Matrix& residual, Rational& delta_out) {
  const int m = residual.row_count(), n = residual.col_count();
  auto cell = [&](int i, int j) -> Rational {
    if (i < 1 || i > m || j < 1 || j > n) return Rational(0);
    return residual.at(i, j);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      Rational d = cell(i, j) - cell(i, j + 1) + cell(i + 1, j + 1) - cell(i + 1, j);
      if (d != 0) {
        delta_out = d;
        return {i, j};
      }
    }
  return {-1, -1};
}

}  // namespace

Explanation greedy_eliminate(const Matrix& a) {
  const int m = a.row_count(), n = a.col_count();
  Matrix residual = a;
  std::vector<WeightedRectangle> terms;
  const int max_steps = compute_corners(a).interior_corner_count();
  for (int step = 0; step <= max_steps; ++step) {
    Rational d;
    const auto [i, j] = first_interior_corner(residual, d);
    if (i < 0) break;
    if (step == max_steps)
      throw std::logic_error("greedy_eliminate failed to terminate within the corner count");
    const Rectangle rect{i + 1, m, j + 1, n};
    terms.push_back({rect, d});
    for (int r = rect.i1; r <= rect.i2; ++r)
      for (int c = rect.j1; c <= rect.j2; ++c) residual.at(r, c) -= d;
  }
  if (!residual.is_zero()) throw std::logic_error("greedy_eliminate left a nonzero residual");
  return canonicalize(std::move(terms));
}

int corner_lower_bound(const Matrix& a) {
  return (compute_corners(a).corner_count() + 3) / 4;
}

LineBound line_lower_bound(const Matrix& a, int exact_limit) {
  const CornerGrid grid = compute_corners(a);
  int total = 0;
  for (int i = 0; i <= a.row_count(); ++i) {
    const DeltaProfile profile = grid.line_profile(i);
    if (profile.nonzero_count() > exact_limit) return {false, 0};
    total += *oracle_zwp(profile, exact_limit).cost;
  }
  return {true, (total + 1) / 2};
}

}  // namespace rectexplain
