#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectexplain/model.hpp"

namespace rectexplain::io {

// Instance files: JSON with a "matrix" (inline rows of exact rational literals,
// or a string path to a CSV resolved against the file's directory) and
// optional "row_tree"/"col_tree" given as nested arrays of leaf indices,
// e.g. [[1,2],3,4] = root with three children, the first an internal node
// over leaves 1,2. Leaves must read 1..k left to right. A bare ".csv" path is
// accepted directly as a matrix-only instance.
struct Instance {
  Matrix matrix;
  std::optional<Hierarchy> row_tree;
  std::optional<Hierarchy> col_tree;

  Instance() : matrix(1, 1) {}
};

// All malformed input throws std::invalid_argument.
Instance load_instance(const std::filesystem::path& path);
Matrix load_matrix_csv(std::istream& in, bool labels = false);
Matrix load_matrix_csv_file(const std::filesystem::path& path, bool labels = false);

// Builds a Hierarchy from the nested-array form above (validates leaf order).
Hierarchy tree_from_nested(const std::string& json_text);

struct ExplanationMeta {
  std::string problem;
  std::string strategy;
  std::uint64_t seed = 0;
  int trials = 1;
  int cost = 0;
  std::optional<int> corner_bound;
  std::optional<int> line_bound;
};

// Weights serialize as JSON integers when integral (and in int64 range), else
// as exact "p/q" strings. Output is byte-stable for identical inputs.
void save_explanation(std::ostream& out, const Explanation& e, const ExplanationMeta& meta);
void save_explanation_file(const std::filesystem::path& path, const Explanation& e,
                           const ExplanationMeta& meta);
std::pair<Explanation, ExplanationMeta> load_explanation(std::istream& in);
std::pair<Explanation, ExplanationMeta> load_explanation_file(const std::filesystem::path& path);

}  // namespace rectexplain::io
