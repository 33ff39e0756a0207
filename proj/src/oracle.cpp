#include "rectexplain/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "rectexplain/errors.hpp"

namespace rectexplain {

namespace {

// ---------------------------------------------------------------------------
// Fraction-free linear solving
// ---------------------------------------------------------------------------

// Exact division, asserting exactness (Bareiss guarantees it).
BigInt divexact(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0) throw std::logic_error("fraction-free elimination division was not exact");
  return q;
}

BigInt to_integer(const Rational& q) {
  if (q.get_den() != 1) throw std::logic_error("expected an integral rational");
  return q.get_num();
}

// Solves coeff * x = rhs exactly; nullopt when inconsistent. Rows are scaled
// integral, then one-step fraction-free forward elimination with row pivoting
// and column skipping; free variables are zero; back substitution is rational.
std::optional<std::vector<Rational>> solve_linear(const std::vector<std::vector<Rational>>& coeff,
                                                  const std::vector<Rational>& rhs) {
  const int rows = static_cast<int>(coeff.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(coeff.front().size());
  if (cols == 0) {
    for (const auto& b : rhs)
      if (b != 0) return std::nullopt;
    return std::vector<Rational>{};
  }

  std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols + 1));
  for (int i = 0; i < rows; ++i) {
    BigInt scale = rhs[i].get_den();
    for (int j = 0; j < cols; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
                                           coeff[i][j].get_den().get_mpz_t());
    const Rational s(scale);
    for (int j = 0; j < cols; ++j) m[i][j] = to_integer(Rational(coeff[i][j] * s));
    m[i][cols] = to_integer(Rational(rhs[i] * s));
  }

  std::vector<std::pair<int, int>> pivots;
  BigInt prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot_row = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot_row = i;
        break;
      }
    if (pivot_row < 0) continue;
    std::swap(m[r], m[pivot_row]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j <= cols; ++j)
        m[i][j] = divexact(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back({r, c});
    ++r;
  }

  for (int i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;

  std::vector<Rational> x(cols, Rational(0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [pr, pc] = *it;
    Rational acc(m[pr][cols]);
    for (int j = pc + 1; j < cols; ++j)
      if (m[pr][j] != 0) acc -= Rational(m[pr][j]) * x[j];
    x[pc] = acc / Rational(m[pr][pc]);
  }
  return x;
}

// Corner difference of `a` at grid point (i, j), zero-padded outside.
Rational corner_delta(const Matrix& a, int i, int j) {
  auto cell = [&](int r, int c) -> Rational {
    if (r < 1 || r > a.row_count() || c < 1 || c > a.col_count()) return Rational(0);
    return a.at(r, c);
  };
  return cell(i, j) - cell(i, j + 1) + cell(i + 1, j + 1) - cell(i + 1, j);
}

// ---------------------------------------------------------------------------
// Subset search
// ---------------------------------------------------------------------------

// Every rectangle can change the corner grid only at its own four corner
// positions, so a subset leaving some corner of `a` untouched is infeasible;
// the search prunes on that and on the 4-corners-per-rectangle counting bound.
struct SubsetSearch {
  const Matrix& a;
  const std::vector<Rectangle>& allowed;
  std::vector<std::vector<int>> covers;    // rect -> indices of corner points it touches
  std::vector<std::vector<int>> coverers;  // corner point -> rect indices, ascending
  int point_count = 0;

  std::vector<int> cover_count;
  int uncovered = 0;
  std::vector<int> chosen;
  std::vector<Rational> found_weights;
  std::uint64_t visited = 0;
  std::uint64_t budget = 0;
  bool out_of_budget = false;

  SubsetSearch(const Matrix& matrix, const std::vector<Rectangle>& family)
      : a(matrix), allowed(family) {
    const int m = a.row_count(), n = a.col_count();
    std::vector<std::vector<int>> point_id(m + 1, std::vector<int>(n + 1, -1));
    std::vector<std::pair<int, int>> points;
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= n; ++j)
        if (corner_delta(a, i, j) != 0) {
          point_id[i][j] = static_cast<int>(points.size());
          points.push_back({i, j});
        }
    point_count = static_cast<int>(points.size());
    covers.resize(allowed.size());
    coverers.resize(point_count);
    for (std::size_t t = 0; t < allowed.size(); ++t) {
      const Rectangle& r = allowed[t];
      const std::pair<int, int> corners[4] = {{r.i1 - 1, r.j1 - 1}, {r.i1 - 1, r.j2},
                                              {r.i2, r.j1 - 1},     {r.i2, r.j2}};
      for (const auto& [ci, cj] : corners) {
        const int p = point_id[ci][cj];
        if (p >= 0) {
          covers[t].push_back(p);
          coverers[p].push_back(static_cast<int>(t));
        }
      }
    }
    cover_count.assign(point_count, 0);
    uncovered = point_count;
  }

  bool run(int from, int remaining) {
    if (++visited > budget) {
      out_of_budget = true;
      return false;
    }
    if (remaining == 0) {
      if (uncovered != 0) return false;
      std::vector<Rectangle> subset;
      subset.reserve(chosen.size());
      for (int idx : chosen) subset.push_back(allowed[idx]);
      ++visited;
      auto w = exact_weights_for(subset, a);
      if (!w) return false;
      found_weights = std::move(*w);
      return true;
    }
    if (uncovered > 4 * remaining) return false;
    if (uncovered > 0) {
      int p = 0;
      while (cover_count[p] != 0) ++p;
      const auto& list = coverers[p];
      if (list.empty() || list.back() < from) return false;  // point unreachable
    }
    const int last = static_cast<int>(allowed.size()) - remaining;
    for (int i = from; i <= last; ++i) {
      for (int p : covers[i])
        if (cover_count[p]++ == 0) --uncovered;
      chosen.push_back(i);
      if (run(i + 1, remaining - 1)) return true;
      chosen.pop_back();
      for (int p : covers[i])
        if (--cover_count[p] == 0) ++uncovered;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Rational>> exact_weights_for(const std::vector<Rectangle>& rects,
                                                       const Matrix& a) {
  for (const auto& r : rects)
    if (!a.contains(r)) throw std::invalid_argument("rectangle outside matrix");
  const int m = a.row_count(), n = a.col_count();
  std::vector<std::vector<Rational>> coeff;
  std::vector<Rational> rhs;
  coeff.reserve(static_cast<std::size_t>(m) * n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) {
      std::vector<Rational> row(rects.size(), Rational(0));
      for (std::size_t t = 0; t < rects.size(); ++t)
        if (rects[t].contains(i, j)) row[t] = 1;
      coeff.push_back(std::move(row));
      rhs.push_back(a.at(i, j));
    }
  auto x = solve_linear(coeff, rhs);
  if (!x) return std::nullopt;
  std::vector<WeightedRectangle> terms;
  for (std::size_t t = 0; t < rects.size(); ++t)
    if ((*x)[t] != 0) terms.push_back({rects[t], (*x)[t]});
  if (!verify(a, canonicalize(std::move(terms))).ok)
    throw std::logic_error("exact_weights_for solution failed verification");
  return x;
}

std::vector<Rectangle> all_rectangles(int m, int n) {
  std::vector<Rectangle> out;
  for (int i1 = 1; i1 <= m; ++i1)
    for (int j1 = 1; j1 <= n; ++j1)
      for (int i2 = i1; i2 <= m; ++i2)
        for (int j2 = j1; j2 <= n; ++j2) out.push_back({i1, i2, j1, j2});
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Rectangle> allowed_tree_rectangles(const TreeInstance& inst) {
  std::vector<Rectangle> out;
  for (const auto& [i1, i2] : inst.row_tree.intervals())
    for (const auto& [j1, j2] : inst.col_tree.intervals()) out.push_back({i1, i2, j1, j2});
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

OracleResult oracle_min_explanation(const Matrix& a, const std::vector<Rectangle>& allowed,
                                    int k_max, std::uint64_t budget, int k_start) {
  for (const auto& r : allowed)
    if (!a.contains(r)) throw std::invalid_argument("rectangle outside matrix");
  if (k_max < 0)
    k_max = std::min<int>(static_cast<int>(allowed.size()), a.row_count() * a.col_count());

  OracleResult result;
  result.proven_lower_bound = k_start;
  SubsetSearch search(a, allowed);
  for (int k = k_start; k <= k_max; ++k) {
    search.budget = budget;
    const bool found = search.run(0, k);
    result.subsets_examined = search.visited;
    if (found) {
      std::vector<WeightedRectangle> terms;
      for (std::size_t t = 0; t < search.chosen.size(); ++t)
        if (search.found_weights[t] != 0)
          terms.push_back({allowed[search.chosen[t]], search.found_weights[t]});
      result.explanation = canonicalize(std::move(terms));
      if (result.explanation->cost() != k)
        throw std::invalid_argument("k_start was not a valid lower bound");
      result.status = OracleStatus::optimal;
      result.cost = k;
      return result;
    }
    if (search.out_of_budget) {
      result.status = OracleStatus::budget_exceeded;
      result.proven_lower_bound = k;
      return result;
    }
    result.proven_lower_bound = k + 1;
    search.chosen.clear();
  }
  // The family cannot represent `a` within k_max terms.
  result.status = OracleStatus::budget_exceeded;
  return result;
}

namespace {

template <typename Sum>
int packing_dp(const std::vector<Sum>& value, std::vector<std::vector<int>>* parts,
               std::uint64_t& ops) {
  const int r = static_cast<int>(value.size());
  const std::size_t full = (std::size_t{1} << r) - 1;
  std::vector<char> zero(full + 1, 0);
  {
    std::vector<Sum> sums(full + 1, Sum(0));
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const int low = std::countr_zero(mask);
      sums[mask] = sums[mask & (mask - 1)] + value[low];
      zero[mask] = sums[mask] == Sum(0);
    }
  }
  std::vector<std::int16_t> dp(full + 1, -1);
  std::vector<std::uint32_t> choice(full + 1, 0);
  dp[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t low = mask & (0 - mask);
    const std::size_t rest = mask ^ low;
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      ++ops;
      const std::size_t part = sub | low;
      if (zero[part] && dp[mask ^ part] >= 0 && dp[mask ^ part] + 1 > dp[mask]) {
        dp[mask] = static_cast<std::int16_t>(dp[mask ^ part] + 1);
        choice[mask] = static_cast<std::uint32_t>(part);
      }
      if (sub == 0) break;
    }
  }
  if (parts) {
    parts->clear();
    std::size_t mask = full;
    while (mask != 0) {
      const std::size_t part = choice[mask];
      std::vector<int> indices;
      for (int b = 0; b < r; ++b)
        if (part & (std::size_t{1} << b)) indices.push_back(b);
      parts->push_back(std::move(indices));
      mask ^= part;
    }
    std::reverse(parts->begin(), parts->end());
  }
  return dp[full];
}

}  // namespace

int max_zero_sum_parts(const std::vector<Rational>& values, int limit,
                       std::vector<std::vector<int>>* parts) {
  const int r = static_cast<int>(values.size());
  if (r > limit) throw limit_error("too many nonzero items for the exact partition oracle");
  if (r == 0) {
    if (parts) parts->clear();
    return 0;
  }
  {
    Rational total = 0;
    for (const auto& v : values) total += v;
    if (total != 0) throw std::invalid_argument("values do not sum to zero");
  }
  BigInt lcm = 1;
  for (const auto& v : values) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<BigInt> scaled(r);
  bool fits = true;
  for (int i = 0; i < r; ++i) {
    scaled[i] = to_integer(Rational(values[i] * Rational(lcm)));
    if (!scaled[i].fits_slong_p()) fits = false;
  }
  std::uint64_t ops = 0;
  if (fits) {
    const long long guard = std::numeric_limits<long long>::max() / (r + 1);
    std::vector<long long> v64(r);
    for (int i = 0; i < r; ++i) {
      v64[i] = scaled[i].get_si();
      if (std::llabs(v64[i]) > guard) fits = false;
    }
    if (fits) return packing_dp(v64, parts, ops);
  }
  return packing_dp(scaled, parts, ops);
}

OracleResult oracle_zwp(const DeltaProfile& d, int limit) {
  if (!d.sums_to_zero()) throw std::invalid_argument("delta profile does not sum to zero");
  ZeroPartition partition;
  partition.item_count = d.item_count();
  std::vector<int> nonzero_index;
  std::vector<Rational> nonzero_value;
  for (int k = 0; k < d.item_count(); ++k) {
    if (d.deltas[k] == 0)
      partition.sets.push_back({k});
    else {
      nonzero_index.push_back(k);
      nonzero_value.push_back(d.deltas[k]);
    }
  }
  OracleResult result;
  std::vector<std::vector<int>> parts;
  const int r = static_cast<int>(nonzero_value.size());
  if (r > limit) throw limit_error("too many nonzero items for the exact partition oracle");
  if (r > 0) {
    max_zero_sum_parts(nonzero_value, limit, &parts);
    for (auto& part : parts) {
      std::vector<int> set;
      set.reserve(part.size());
      for (int local : part) set.push_back(nonzero_index[local]);
      partition.sets.push_back(std::move(set));
    }
  }
  std::sort(partition.sets.begin(), partition.sets.end());
  result.subsets_examined = std::uint64_t{1} << r;
  result.cost = partition.cost();
  result.partition = std::move(partition);
  result.status = OracleStatus::optimal;
  return result;
}

OracleResult brute_force_min(const Hierarchy& tree, const std::vector<Rational>& v, int k_max,
                             std::uint64_t budget) {
  if (static_cast<int>(v.size()) != tree.leaf_count())
    throw std::invalid_argument("vector length != leaf count");
  Matrix a(static_cast<int>(v.size()), 1);
  for (int i = 1; i <= a.row_count(); ++i) a.at(i, 1) = v[i - 1];
  std::vector<Rectangle> family;
  for (const auto& [lo, hi] : tree.intervals()) family.push_back({lo, hi, 1, 1});
  std::sort(family.begin(), family.end(), canonical_less);
  return oracle_min_explanation(a, family, k_max, budget, 0);
}

}  // namespace rectexplain
