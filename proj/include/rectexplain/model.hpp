#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rectexplain/rational.hpp"

namespace rectexplain {

// ---------------------------------------------------------------------------
// Rectangles and matrices (1-based inclusive indices throughout)
// ---------------------------------------------------------------------------

struct Rectangle {
  int i1 = 1, i2 = 1, j1 = 1, j2 = 1;

  bool contains(int i, int j) const { return i1 <= i && i <= i2 && j1 <= j && j <= j2; }
  int row_span() const { return i2 - i1 + 1; }
  int col_span() const { return j2 - j1 + 1; }
  bool well_formed() const { return 1 <= i1 && i1 <= i2 && 1 <= j1 && j1 <= j2; }
  Rectangle transposed() const { return {j1, j2, i1, i2}; }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Canonical output order for explanations: (i1, j1, i2, j2).
bool canonical_less(const Rectangle& a, const Rectangle& b);

class Matrix {
 public:
  Matrix(int rows, int cols);  // zero-filled; throws on rows/cols < 1
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int row_count() const { return rows_; }
  int col_count() const { return cols_; }

  const Rational& at(int i, int j) const;  // 1-based; throws std::out_of_range
  Rational& at(int i, int j);

  std::vector<Rational> column(int j) const;
  std::vector<Rational> row(int i) const;
  Matrix transposed() const;
  bool is_zero() const;
  bool contains(const Rectangle& r) const {
    return r.well_formed() && r.i2 <= rows_ && r.j2 <= cols_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_, cols_;
  std::vector<Rational> entries_;  // row-major
};

// ---------------------------------------------------------------------------
// Explanations
// ---------------------------------------------------------------------------

struct WeightedRectangle {
  Rectangle rect;
  Rational weight;

  friend bool operator==(const WeightedRectangle&, const WeightedRectangle&) = default;
};

// A finite set of weighted rectangles. Canonical form (as produced by
// canonicalize and by every solver here): terms sorted by (i1,j1,i2,j2), no
// duplicate rectangles, no zero weights.
struct Explanation {
  std::vector<WeightedRectangle> terms;

  int cost() const { return static_cast<int>(terms.size()); }
  bool empty() const { return terms.empty(); }
  Explanation transposed() const;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

// Merges duplicate rectangles by summing weights, drops zero weights, sorts
// canonically. Verification outcome is unchanged by this.
Explanation canonicalize(std::vector<WeightedRectangle> terms);

struct CellMismatch {
  int i = 0, j = 0;
  Rational expected;  // the matrix entry
  Rational actual;    // the explanation's sum at that cell
};

struct VerificationReport {
  bool ok = false;
  std::optional<CellMismatch> first_mismatch;  // row-major first failure
};

// Exact check of the representation equation: every cell's covering weights
// must sum to the matrix entry. Throws std::invalid_argument on a rectangle
// that does not fit the matrix.
VerificationReport verify(const Matrix& a, const Explanation& e);

// Sums an explanation into an m x n matrix (the inverse direction of verify).
Matrix matrix_of(const Explanation& e, int rows, int cols);

// ---------------------------------------------------------------------------
// Hierarchies
// ---------------------------------------------------------------------------

// Rooted ordered tree whose leaves carry indices 1..k left to right. Every
// node's leaf set is a contiguous interval by construction, and the family of
// those intervals is laminar. Node ids are creation order; the root is id 0.
class Hierarchy {
 public:
  struct Node {
    int parent = -1;
    std::vector<int> children;  // empty iff leaf
    int leaf_lo = 0, leaf_hi = 0;

    friend bool operator==(const Node&, const Node&) = default;
  };

  class Builder {
   public:
    Builder();                  // starts with the root, id 0
    int add_child(int parent);  // returns the new node's id
    Hierarchy build() const;    // childless nodes become leaves, numbered in DFS order

   private:
    std::vector<Node> nodes_;
  };

  Hierarchy() = default;  // empty; only assignable, not usable

  static Hierarchy star(int leaf_count);             // root with leaf_count leaf children
  static Hierarchy balanced_binary(int leaf_count);  // halving splits; 1 leaf = single node

  int root() const { return 0; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const { return static_cast<int>(leaf_nodes_.size()); }
  bool is_leaf(int id) const { return node(id).children.empty(); }
  const Node& node(int id) const;  // throws std::out_of_range on unknown id

  // Contiguous 1-based leaf interval under a node.
  std::pair<int, int> leaf_interval(int id) const;
  int leaf_node(int leaf_index) const;  // node id of the given 1-based leaf
  bool has_interval(int lo, int hi) const { return intervals_.count({lo, hi}) > 0; }
  const std::set<std::pair<int, int>>& intervals() const { return intervals_; }

  // Collapses single-child chains so every internal node has >= 2 children.
  // Leaf order and the set of leaf intervals are unchanged.
  Hierarchy normalized() const;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

 private:
  void index();  // fills leaf numbering + interval set; validates shape

  std::vector<Node> nodes_;
  std::vector<int> leaf_nodes_;  // leaf index (0-based) -> node id
  std::set<std::pair<int, int>> intervals_;
};

struct TreeInstance {
  Matrix matrix;
  Hierarchy row_tree;  // leaves = rows 1..m
  Hierarchy col_tree;  // leaves = columns 1..n

  TreeInstance(Matrix m, Hierarchy rows, Hierarchy cols);  // validates leaf counts
  TreeInstance transposed() const;
};

// True iff the rectangle's row interval is some row-tree node's leaf interval
// and likewise for columns. Throws on a rectangle outside the matrix.
bool is_allowed_tree(const Rectangle& r, const TreeInstance& inst);

}  // namespace rectexplain
