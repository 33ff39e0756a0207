#pragma once

#include <string>
#include <vector>

#include "rectexplain/model.hpp"
#include "rectexplain/rng.hpp"

namespace rectexplain::gen {

// Uniform integer entries in [lo, hi].
Matrix random_matrix(int rows, int cols, int lo, int hi, Rng& rng);
std::vector<Rational> random_vector(int length, int lo, int hi, Rng& rng);

enum class TreeShape { star, binary, random_shape };

// "star" | "binary" | "random"; throws std::invalid_argument otherwise.
TreeShape parse_tree_shape(const std::string& name);

// random_shape draws child counts in 1..4 per node (1 with low probability,
// exercising chain normalization); star/binary ignore rng.
Hierarchy make_tree(TreeShape shape, int leaves, Rng& rng);

}  // namespace rectexplain::gen
