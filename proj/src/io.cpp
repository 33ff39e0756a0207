#include "rectexplain/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rectexplain/rational.hpp"

namespace rectexplain::io {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad_input(const std::string& what) { throw std::invalid_argument(what); }

Rational rational_from_json(const ordered_json& v, const char* where) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (!q) bad_input(std::string("bad rational literal in ") + where);
    return *q;
  }
  bad_input(std::string(where) + ": values must be integers or \"p/q\" strings");
}

ordered_json rational_to_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p())
    return ordered_json(static_cast<std::int64_t>(q.get_num().get_si()));
  return ordered_json(rational_to_string(q));
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Nested-array tree spec: integer = leaf, array = internal node.
void build_tree_node(const ordered_json& spec, Hierarchy::Builder& builder, int node,
                     std::vector<int>& leaf_sequence) {
  if (spec.is_number_integer()) {
    leaf_sequence.push_back(spec.get<int>());
    return;
  }
  if (!spec.is_array() || spec.empty()) bad_input("tree nodes must be leaf indices or non-empty arrays");
  for (const auto& child : spec) {
    const int id = builder.add_child(node);
    if (child.is_number_integer())
      leaf_sequence.push_back(child.get<int>());
    else
      build_tree_node(child, builder, id, leaf_sequence);
  }
}

Hierarchy tree_from_json(const ordered_json& spec) {
  Hierarchy::Builder builder;
  std::vector<int> leaf_sequence;
  build_tree_node(spec, builder, 0, leaf_sequence);
  for (std::size_t k = 0; k < leaf_sequence.size(); ++k)
    if (leaf_sequence[k] != static_cast<int>(k) + 1)
      bad_input("tree leaves must be exactly 1..k in left-to-right order");
  if (leaf_sequence.empty()) bad_input("tree has no leaves");
  return builder.build();
}

Matrix matrix_from_json(const ordered_json& rows) {
  if (!rows.is_array() || rows.empty()) bad_input("matrix must be a non-empty array of rows");
  std::vector<std::vector<Rational>> data;
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) bad_input("matrix rows must be non-empty arrays");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v, "matrix"));
    data.push_back(std::move(r));
  }
  return Matrix::from_rows(data);
}

ordered_json parse_json(std::istream& in, const std::string& what) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad_input(what + ": " + e.what());
  }
  return j;
}

}  // namespace

Matrix load_matrix_csv(std::istream& in, bool labels) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    if (labels && first) {
      first = false;
      continue;
    }
    first = false;
    std::vector<Rational> row;
    std::stringstream cells(line);
    std::string cell;
    bool first_cell = true;
    while (std::getline(cells, cell, ',')) {
      if (labels && first_cell) {
        first_cell = false;
        continue;
      }
      first_cell = false;
      auto q = parse_rational(trimmed(cell));
      if (!q) bad_input("bad rational literal in CSV: '" + trimmed(cell) + "'");
      row.push_back(*q);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) bad_input("CSV matrix is empty");
  return Matrix::from_rows(rows);
}

Matrix load_matrix_csv_file(const std::filesystem::path& path, bool labels) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path.string());
  return load_matrix_csv(in, labels);
}

Hierarchy tree_from_nested(const std::string& json_text) {
  std::stringstream ss(json_text);
  return tree_from_json(parse_json(ss, "tree"));
}

Instance load_instance(const std::filesystem::path& path) {
  Instance inst;
  if (path.extension() == ".csv") {
    inst.matrix = load_matrix_csv_file(path);
    return inst;
  }
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path.string());
  const ordered_json j = parse_json(in, path.string());
  if (!j.is_object() || !j.contains("matrix")) bad_input(path.string() + ": missing \"matrix\"");
  if (j["matrix"].is_string()) {
    const auto csv = path.parent_path() / j["matrix"].get<std::string>();
    inst.matrix = load_matrix_csv_file(csv);
  } else {
    inst.matrix = matrix_from_json(j["matrix"]);
  }
  if (j.contains("row_tree")) {
    inst.row_tree = tree_from_json(j["row_tree"]);
    if (inst.row_tree->leaf_count() != inst.matrix.row_count())
      bad_input("row_tree leaf count != matrix rows");
  }
  if (j.contains("col_tree")) {
    inst.col_tree = tree_from_json(j["col_tree"]);
    if (inst.col_tree->leaf_count() != inst.matrix.col_count())
      bad_input("col_tree leaf count != matrix columns");
  }
  return inst;
}

void save_explanation(std::ostream& out, const Explanation& e, const ExplanationMeta& meta) {
  ordered_json j;
  ordered_json m;
  m["problem"] = meta.problem;
  m["strategy"] = meta.strategy;
  m["seed"] = meta.seed;
  m["trials"] = meta.trials;
  m["cost"] = meta.cost;
  ordered_json bounds = ordered_json::object();
  if (meta.corner_bound) bounds["corner"] = *meta.corner_bound;
  if (meta.line_bound) bounds["line"] = *meta.line_bound;
  m["bounds"] = bounds;
  j["metadata"] = m;
  ordered_json terms = ordered_json::array();
  for (const auto& t : e.terms) {
    ordered_json rec;
    rec["i1"] = t.rect.i1;
    rec["i2"] = t.rect.i2;
    rec["j1"] = t.rect.j1;
    rec["j2"] = t.rect.j2;
    rec["w"] = rational_to_json(t.weight);
    terms.push_back(rec);
  }
  j["terms"] = terms;
  out << j.dump(2) << '\n';
}

void save_explanation_file(const std::filesystem::path& path, const Explanation& e,
                           const ExplanationMeta& meta) {
  std::ofstream out(path);
  if (!out) bad_input("cannot open " + path.string() + " for writing");
  save_explanation(out, e, meta);
}

std::pair<Explanation, ExplanationMeta> load_explanation(std::istream& in) {
  const ordered_json j = parse_json(in, "explanation");
  if (!j.is_object() || !j.contains("terms")) bad_input("explanation: missing \"terms\"");
  Explanation e;
  for (const auto& rec : j["terms"]) {
    if (!rec.is_object()) bad_input("explanation terms must be objects");
    for (const char* key : {"i1", "i2", "j1", "j2", "w"})
      if (!rec.contains(key)) bad_input(std::string("explanation term missing \"") + key + "\"");
    Rectangle r{rec["i1"].get<int>(), rec["i2"].get<int>(), rec["j1"].get<int>(),
                rec["j2"].get<int>()};
    if (!r.well_formed()) bad_input("explanation term has malformed bounds");
    const Rational w = rational_from_json(rec["w"], "explanation");
    if (w == 0) bad_input("explanation weights must be nonzero");
    e.terms.push_back({r, w});
  }
  ExplanationMeta meta;
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& m = j["metadata"];
    if (m.contains("problem")) meta.problem = m["problem"].get<std::string>();
    if (m.contains("strategy")) meta.strategy = m["strategy"].get<std::string>();
    if (m.contains("seed")) meta.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("trials")) meta.trials = m["trials"].get<int>();
    if (m.contains("cost")) meta.cost = m["cost"].get<int>();
    if (m.contains("bounds") && m["bounds"].is_object()) {
      if (m["bounds"].contains("corner")) meta.corner_bound = m["bounds"]["corner"].get<int>();
      if (m["bounds"].contains("line")) meta.line_bound = m["bounds"]["line"].get<int>();
    }
  }
  return {std::move(e), std::move(meta)};
}

std::pair<Explanation, ExplanationMeta> load_explanation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path.string());
  return load_explanation(in);
}

}  // namespace rectexplain::io
