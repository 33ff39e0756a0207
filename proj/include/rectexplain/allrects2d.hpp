#pragma once

#include <utility>
#include <vector>

#include "rectexplain/model.hpp"
#include "rectexplain/rng.hpp"
#include "rectexplain/zwp.hpp"

namespace rectexplain {

// Cross differences of a zero-padded matrix on the (m+1) x (n+1) grid:
//   delta(i, j) = a(i,j) - a(i,j+1) + a(i+1,j+1) - a(i+1,j),  0 <= i <= m, 0 <= j <= n.
// A grid point with nonzero delta is a corner. Every grid row and every grid
// column sums to zero, and any rectangle in a representation can change the
// grid only at its own four corner positions.
class CornerGrid {
 public:
  CornerGrid(int m, int n);

  int matrix_rows() const { return m_; }
  int matrix_cols() const { return n_; }
  const Rational& delta(int i, int j) const;  // grid coordinates, 0-based
  Rational& delta(int i, int j);

  int corner_count() const;
  int interior_corner_count() const;  // corners with i < m and j < n
  std::vector<std::pair<int, int>> corners() const;

  // Grid row i as a 1-D delta profile over j = 0..n.
  DeltaProfile line_profile(int i) const;

 private:
  int m_, n_;
  std::vector<Rational> delta_;
};

CornerGrid compute_corners(const Matrix& a);

// Bottom-anchored solver: for each horizontal grid line i = 0..m-1, solves the
// 1-D zero-weight partition problem on that line's profile (sub-seeded per
// line from rng), and every resulting interval [j1, j2] with weight w becomes
// Rect(i+1, m, j1, j2) with weight w, so every term reaches the bottom row.
// The zero residual is asserted at the end (logic_error on failure).
Explanation explain_all_rects(const Matrix& a, Strategy strategy, Rng& rng,
                              const ZwpOptions& options = {});

// Corner elimination: repeatedly find the lexicographically first interior
// corner (i, j) of the residual and cancel it with Rect(i+1, m, j+1, n)
// weighted by the corner's delta. Interior corners only disappear, so this
// terminates within the input's interior-corner count.
Explanation greedy_eliminate(const Matrix& a);

// ceil(corners / 4): each rectangle has exactly four corners.
int corner_lower_bound(const Matrix& a);

struct LineBound {
  bool available = false;  // false when some line exceeds the exact-solve limit
  int bound = 0;
};

// ceil(sum of per-line 1-D optima / 2) over all m+1 grid lines: a rectangle's
// top and bottom sides each lie on a grid line, so each rectangle is counted
// at most twice.
LineBound line_lower_bound(const Matrix& a, int exact_limit = 20);

}  // namespace rectexplain
