#include "rectexplain/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace rectexplain {

bool canonical_less(const Rectangle& a, const Rectangle& b) {
  return std::tie(a.i1, a.j1, a.i2, a.j2) < std::tie(b.i1, b.j1, b.i2, b.j2);
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
  entries_.resize(static_cast<std::size_t>(rows) * cols);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("matrix must have at least one row and column");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols_)
      throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < m.cols_; ++j) m.entries_[static_cast<std::size_t>(i) * m.cols_ + j] = rows[i][j];
  }
  return m;
}

const Rational& Matrix::at(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) throw std::out_of_range("matrix index");
  return entries_[static_cast<std::size_t>(i - 1) * cols_ + (j - 1)];
}

Rational& Matrix::at(int i, int j) {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) throw std::out_of_range("matrix index");
  return entries_[static_cast<std::size_t>(i - 1) * cols_ + (j - 1)];
}

std::vector<Rational> Matrix::column(int j) const {
  std::vector<Rational> v(rows_);
  for (int i = 1; i <= rows_; ++i) v[i - 1] = at(i, j);
  return v;
}

std::vector<Rational> Matrix::row(int i) const {
  std::vector<Rational> v(cols_);
  for (int j = 1; j <= cols_; ++j) v[j - 1] = at(i, j);
  return v;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q == 0; });
}

// ---------------------------------------------------------------------------
// Explanations
// ---------------------------------------------------------------------------

Explanation Explanation::transposed() const {
  std::vector<WeightedRectangle> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back({t.rect.transposed(), t.weight});
  return canonicalize(std::move(out));
}

Explanation canonicalize(std::vector<WeightedRectangle> terms) {
  std::map<Rectangle, Rational, decltype(&canonical_less)> merged(&canonical_less);
  for (auto& t : terms) merged[t.rect] += t.weight;
  Explanation e;
  for (auto& [rect, w] : merged)
    if (w != 0) e.terms.push_back({rect, w});
  return e;
}

namespace {

// Accumulates all terms into a 2-D difference grid, then prefix-sums; gives
// each cell's covering-weight total in O(cost + m*n) exact operations.
std::vector<Rational> cell_sums(const Explanation& e, int m, int n) {
  std::vector<Rational> diff(static_cast<std::size_t>(m + 2) * (n + 2));
  auto at = [&](int i, int j) -> Rational& { return diff[static_cast<std::size_t>(i) * (n + 2) + j]; };
  for (const auto& t : e.terms) {
    at(t.rect.i1, t.rect.j1) += t.weight;
    at(t.rect.i1, t.rect.j2 + 1) -= t.weight;
    at(t.rect.i2 + 1, t.rect.j1) -= t.weight;
    at(t.rect.i2 + 1, t.rect.j2 + 1) += t.weight;
  }
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) at(i, j) += at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
  return diff;
}

}  // namespace

VerificationReport verify(const Matrix& a, const Explanation& e) {
  const int m = a.row_count(), n = a.col_count();
  for (const auto& t : e.terms)
    if (!a.contains(t.rect)) throw std::invalid_argument("rectangle outside matrix");
  auto sums = cell_sums(e, m, n);
  VerificationReport report;
  report.ok = true;
  for (int i = 1; i <= m && report.ok; ++i)
    for (int j = 1; j <= n; ++j) {
      const Rational& got = sums[static_cast<std::size_t>(i) * (n + 2) + j];
      if (got != a.at(i, j)) {
        report.ok = false;
        report.first_mismatch = CellMismatch{i, j, a.at(i, j), got};
        break;
      }
    }
  return report;
}

Matrix matrix_of(const Explanation& e, int rows, int cols) {
  Matrix a(rows, cols);
  for (const auto& t : e.terms)
    if (!a.contains(t.rect)) throw std::invalid_argument("rectangle outside matrix");
  auto sums = cell_sums(e, rows, cols);
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) a.at(i, j) = sums[static_cast<std::size_t>(i) * (cols + 2) + j];
  return a;
}

// ---------------------------------------------------------------------------
// Hierarchy
// ---------------------------------------------------------------------------

Hierarchy::Builder::Builder() { nodes_.emplace_back(); }

int Hierarchy::Builder::add_child(int parent) {
  if (parent < 0 || parent >= static_cast<int>(nodes_.size()))
    throw std::out_of_range("unknown parent node");
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_[id].parent = parent;
  nodes_[parent].children.push_back(id);
  return id;
}

Hierarchy Hierarchy::Builder::build() const {
  Hierarchy h;
  h.nodes_ = nodes_;
  h.index();
  return h;
}

void Hierarchy::index() {
  leaf_nodes_.clear();
  intervals_.clear();
  // Iterative DFS in child order: leaves get 1..k left to right, then leaf
  // intervals propagate upward.
  std::vector<int> order;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  for (int v : order)
    if (nodes_[v].children.empty()) {
      leaf_nodes_.push_back(v);
      const int k = static_cast<int>(leaf_nodes_.size());
      nodes_[v].leaf_lo = nodes_[v].leaf_hi = k;
    }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node& nd = nodes_[*it];
    if (!nd.children.empty()) {
      nd.leaf_lo = nodes_[nd.children.front()].leaf_lo;
      nd.leaf_hi = nodes_[nd.children.back()].leaf_hi;
    }
    intervals_.insert({nd.leaf_lo, nd.leaf_hi});
  }
}

Hierarchy Hierarchy::star(int leaf_count) {
  if (leaf_count < 1) throw std::invalid_argument("leaf count must be >= 1");
  Builder b;
  for (int i = 0; i < leaf_count; ++i) b.add_child(0);
  return b.build();
}

namespace {

void split_binary(Hierarchy::Builder& b, int node, int size) {
  if (size <= 1) return;
  const int half = (size + 1) / 2;
  const int left = b.add_child(node);
  const int right = b.add_child(node);
  split_binary(b, left, half);
  split_binary(b, right, size - half);
}

}  // namespace

Hierarchy Hierarchy::balanced_binary(int leaf_count) {
  if (leaf_count < 1) throw std::invalid_argument("leaf count must be >= 1");
  Builder b;
  split_binary(b, 0, leaf_count);
  return b.build();
}

const Hierarchy::Node& Hierarchy::node(int id) const {
  if (id < 0 || id >= node_count()) throw std::out_of_range("unknown node id");
  return nodes_[id];
}

std::pair<int, int> Hierarchy::leaf_interval(int id) const {
  const Node& nd = node(id);
  return {nd.leaf_lo, nd.leaf_hi};
}

int Hierarchy::leaf_node(int leaf_index) const {
  if (leaf_index < 1 || leaf_index > leaf_count()) throw std::out_of_range("unknown leaf index");
  return leaf_nodes_[leaf_index - 1];
}

namespace {

// Skips through single-child chains to the first node with 0 or >= 2 children.
int effective_node(const std::vector<Hierarchy::Node>& nodes, int id) {
  while (nodes[id].children.size() == 1) id = nodes[id].children.front();
  return id;
}

}  // namespace

Hierarchy Hierarchy::normalized() const {
  Builder b;
  // (old effective id, new id) pairs to expand.
  std::vector<std::pair<int, int>> stack{{effective_node(nodes_, 0), 0}};
  while (!stack.empty()) {
    auto [old_id, new_id] = stack.back();
    stack.pop_back();
    // Children pushed in reverse keep the original left-to-right order, which
    // Builder ids follow for determinism; leaf numbering is order-based either way.
    const auto& ch = nodes_[old_id].children;
    std::vector<std::pair<int, int>> batch;
    for (int c : ch) batch.push_back({effective_node(nodes_, c), b.add_child(new_id)});
    for (auto it = batch.rbegin(); it != batch.rend(); ++it) stack.push_back(*it);
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// TreeInstance
// ---------------------------------------------------------------------------

TreeInstance::TreeInstance(Matrix m, Hierarchy rows, Hierarchy cols)
    : matrix(std::move(m)), row_tree(std::move(rows)), col_tree(std::move(cols)) {
  if (row_tree.leaf_count() != matrix.row_count())
    throw std::invalid_argument("row tree leaf count != matrix rows");
  if (col_tree.leaf_count() != matrix.col_count())
    throw std::invalid_argument("column tree leaf count != matrix columns");
}

TreeInstance TreeInstance::transposed() const {
  return TreeInstance(matrix.transposed(), col_tree, row_tree);
}

bool is_allowed_tree(const Rectangle& r, const TreeInstance& inst) {
  if (!inst.matrix.contains(r)) throw std::invalid_argument("rectangle outside matrix");
  return inst.row_tree.has_interval(r.i1, r.i2) && inst.col_tree.has_interval(r.j1, r.j2);
}

}  // namespace rectexplain
