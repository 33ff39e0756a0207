#include "rectexplain/gen.hpp"

#include <stdexcept>

namespace rectexplain::gen {

Matrix random_matrix(int rows, int cols, int lo, int hi, Rng& rng) {
  if (lo > hi) throw std::invalid_argument("empty value range");
  Matrix a(rows, cols);
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) a.at(i, j) = rng.range(lo, hi);
  return a;
}

std::vector<Rational> random_vector(int length, int lo, int hi, Rng& rng) {
  if (lo > hi) throw std::invalid_argument("empty value range");
  std::vector<Rational> v(length);
  for (auto& x : v) x = rng.range(lo, hi);
  return v;
}

TreeShape parse_tree_shape(const std::string& name) {
  if (name == "star") return TreeShape::star;
  if (name == "binary") return TreeShape::binary;
  if (name == "random") return TreeShape::random_shape;
  throw std::invalid_argument("unknown tree shape: " + name);
}

namespace {

void random_split(Hierarchy::Builder& b, int node, int size, Rng& rng) {
  if (size <= 1) return;
  int parts = rng.range(2, std::min(4, size));
  if (rng.chance(1, 8)) parts = 1;  // occasional chain, collapsed by normalization
  if (parts == 1) {
    random_split(b, b.add_child(node), size, rng);
    return;
  }
  // size split into `parts` positive contiguous blocks.
  std::vector<int> sizes(parts, 1);
  for (int extra = size - parts; extra > 0; --extra) ++sizes[rng.range(0, parts - 1)];
  for (int s : sizes) random_split(b, b.add_child(node), s, rng);
}

}  // namespace

Hierarchy make_tree(TreeShape shape, int leaves, Rng& rng) {
  switch (shape) {
    case TreeShape::star: return Hierarchy::star(leaves);
    case TreeShape::binary: return Hierarchy::balanced_binary(leaves);
    case TreeShape::random_shape: {
      Hierarchy::Builder b;
      random_split(b, 0, leaves, rng);
      return b.build();
    }
  }
  throw std::invalid_argument("unknown tree shape");
}

}  // namespace rectexplain::gen
