#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rectexplain/allrects2d.hpp"
#include "rectexplain/errors.hpp"
#include "rectexplain/gen.hpp"
#include "rectexplain/io.hpp"
#include "rectexplain/model.hpp"
#include "rectexplain/oracle.hpp"
#include "rectexplain/rng.hpp"
#include "rectexplain/treextree.hpp"
#include "rectexplain/zwp.hpp"

namespace {

using namespace rectexplain;

// Exit codes: 0 success, 1 verification/internal failure, 2 malformed input,
// 3 budget or size limit exceeded.

TreeInstance to_tree_instance(const io::Instance& inst) {
  Hierarchy rows = inst.row_tree ? *inst.row_tree : Hierarchy::star(inst.matrix.row_count());
  Hierarchy cols = inst.col_tree ? *inst.col_tree : Hierarchy::star(inst.matrix.col_count());
  return TreeInstance(inst.matrix, rows, cols);
}

std::vector<Rational> line_vector(const Matrix& a) {
  if (a.row_count() == 1) return a.row(1);
  if (a.col_count() == 1) return a.column(1);
  throw std::invalid_argument("line problem needs a 1-row or 1-column matrix");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "exact") return Strategy::exact;
  if (name == "full") return Strategy::full;
  if (name == "simplified") return Strategy::simplified;
  if (name == "residual") return Strategy::residual;
  throw std::invalid_argument("unknown strategy: " + name);
}

PackingStage parse_stage(const std::string& name) {
  if (name.empty()) return PackingStage::none;
  if (name == "triples") return PackingStage::triples;
  if (name == "quads") return PackingStage::quads;
  throw std::invalid_argument("unknown packing stage: " + name);
}

Explanation intervals_to_explanation(const std::vector<WeightedInterval>& intervals,
                                     const Matrix& a) {
  std::vector<WeightedRectangle> terms;
  for (const auto& iv : intervals) {
    if (a.row_count() == 1)
      terms.push_back({{1, 1, iv.lo, iv.hi}, iv.weight});
    else
      terms.push_back({{iv.lo, iv.hi, 1, 1}, iv.weight});
  }
  return canonicalize(std::move(terms));
}

void write_explanation(const std::string& output, const Explanation& e,
                       const io::ExplanationMeta& meta) {
  if (output.empty())
    io::save_explanation(std::cout, e, meta);
  else
    io::save_explanation_file(output, e, meta);
}

std::string format_mean(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

// ---------------------------------------------------------------------------
// explain
// ---------------------------------------------------------------------------

struct ExplainArgs {
  std::string problem, input, strategy = "full", output, stage;
  std::uint64_t seed = 0;
  int trials = 1;
  int swap_size = 2;
  int exact_limit = 20;
};

int cmd_explain(const ExplainArgs& args) {
  const io::Instance inst = io::load_instance(args.input);
  Rng rng(args.seed);
  ZwpOptions options;
  options.swap_size = args.swap_size;
  options.exact_limit = args.exact_limit;
  options.forced_stage = parse_stage(args.stage);

  io::ExplanationMeta meta;
  meta.problem = args.problem;
  meta.strategy = args.strategy;
  meta.seed = args.seed;
  meta.trials = args.trials;

  Explanation e;
  if (args.problem == "line") {
    const auto v = line_vector(inst.matrix);
    e = intervals_to_explanation(explain_line(v, parse_strategy(args.strategy), rng, options),
                                 inst.matrix);
  } else if (args.problem == "rects") {
    if (args.strategy == "greedy4")
      e = greedy_eliminate(inst.matrix);
    else
      e = explain_all_rects(inst.matrix, parse_strategy(args.strategy), rng, options);
  } else if (args.problem == "tree") {
    const TreeInstance ti = to_tree_instance(inst);
    e = best_of_seeds(ti, args.trials, rng);
    for (const auto& t : e.terms)
      if (!is_allowed_tree(t.rect, ti))
        throw std::logic_error("solver emitted a rectangle outside the allowed family");
  } else {
    throw std::invalid_argument("unknown problem: " + args.problem);
  }

  if (!verify(inst.matrix, e).ok)
    throw std::logic_error("self-verification failed before writing output");
  meta.cost = e.cost();
  meta.corner_bound = corner_lower_bound(inst.matrix);
  if (const LineBound lb = line_lower_bound(inst.matrix, args.exact_limit); lb.available)
    meta.line_bound = lb.bound;
  write_explanation(args.output, e, meta);
  std::cerr << "cost=" << e.cost() << " verified\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string matrix, explanation, instance;
};

int cmd_verify(const VerifyArgs& args) {
  const Matrix a = io::load_instance(args.matrix).matrix;
  const auto [e, meta] = io::load_explanation_file(args.explanation);
  const VerificationReport report = verify(a, e);
  if (!report.ok) {
    const auto& mm = *report.first_mismatch;
    std::cerr << "verification failed at cell (" << mm.i << "," << mm.j << "): expected "
              << rational_to_string(mm.expected) << ", actual " << rational_to_string(mm.actual)
              << "\n";
    return 1;
  }
  if (!args.instance.empty()) {
    const TreeInstance ti = to_tree_instance(io::load_instance(args.instance));
    for (const auto& t : e.terms)
      if (!is_allowed_tree(t.rect, ti)) {
        std::cerr << "rectangle (" << t.rect.i1 << "," << t.rect.i2 << "," << t.rect.j1 << ","
                  << t.rect.j2 << ") is not allowed by the hierarchies\n";
        return 1;
      }
  }
  std::cout << "verified cost=" << e.cost() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string problem, input, output;
  int max_size = -1;
  std::uint64_t budget = 10'000'000;
  int exact_limit = 20;
};

int cmd_oracle(const OracleArgs& args) {
  const io::Instance inst = io::load_instance(args.input);
  io::ExplanationMeta meta;
  meta.problem = args.problem;
  meta.strategy = "oracle";

  if (args.problem == "line") {
    const auto v = line_vector(inst.matrix);
    const DeltaProfile d = compute_deltas(v);
    const OracleResult r = oracle_zwp(d, args.exact_limit);
    std::cout << "status=optimal cost=" << *r.cost << "\n";
    if (!args.output.empty()) {
      const Explanation e =
          intervals_to_explanation(partition_to_intervals(*r.partition, d), inst.matrix);
      meta.cost = *r.cost;
      io::save_explanation_file(args.output, e, meta);
    }
    return 0;
  }

  OracleResult r;
  if (args.problem == "rects") {
    const auto family = all_rectangles(inst.matrix.row_count(), inst.matrix.col_count());
    r = oracle_min_explanation(inst.matrix, family, args.max_size, args.budget,
                               corner_lower_bound(inst.matrix));
  } else if (args.problem == "tree") {
    const TreeInstance ti = to_tree_instance(inst);
    r = oracle_min_explanation(inst.matrix, allowed_tree_rectangles(ti), args.max_size,
                               args.budget);
  } else {
    throw std::invalid_argument("unknown problem: " + args.problem);
  }

  if (r.status == OracleStatus::budget_exceeded) {
    std::cout << "status=budget_exceeded proven_lower_bound=" << r.proven_lower_bound
              << " subsets=" << r.subsets_examined << "\n";
    return 3;
  }
  std::cout << "status=optimal cost=" << *r.cost << " subsets=" << r.subsets_examined << "\n";
  if (!args.output.empty()) {
    meta.cost = *r.cost;
    io::save_explanation_file(args.output, *r.explanation, meta);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// corners / deltas
// ---------------------------------------------------------------------------

int cmd_corners(const std::string& input, int exact_limit) {
  const Matrix a = io::load_instance(input).matrix;
  const CornerGrid grid = compute_corners(a);
  for (int i = 0; i <= a.row_count(); ++i) {
    for (int j = 0; j <= a.col_count(); ++j) {
      if (j) std::cout << ' ';
      std::cout << rational_to_string(grid.delta(i, j));
    }
    std::cout << '\n';
  }
  std::cout << "corners=" << grid.corner_count() << " interior=" << grid.interior_corner_count()
            << " corner_bound=" << corner_lower_bound(a);
  const LineBound lb = line_lower_bound(a, exact_limit);
  if (lb.available)
    std::cout << " line_bound=" << lb.bound << "\n";
  else
    std::cout << " line_bound=unavailable\n";
  return 0;
}

int cmd_deltas(const std::string& input, int exact_limit) {
  const Matrix a = io::load_instance(input).matrix;
  const auto v = line_vector(a);
  const DeltaProfile d = compute_deltas(v);
  for (int k = 0; k < d.item_count(); ++k) {
    if (k) std::cout << ' ';
    std::cout << rational_to_string(d.deltas[k]);
  }
  std::cout << '\n';
  std::cout << "items=" << d.item_count() << " nonzero=" << d.nonzero_count()
            << " lower_bound=" << zwp_lower_bound(d, exact_limit) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string problem, values = "-3..3", trees = "star", output;
  int m = 4, n = 4, instances = 10, seeds = 10;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  int exact_limit = 20;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) throw std::invalid_argument("bad range (want LO..HI): " + text);
  try {
    const int lo = std::stoi(text.substr(0, pos));
    const int hi = std::stoi(text.substr(pos + 2));
    if (lo > hi) throw std::invalid_argument("empty range: " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range (want LO..HI): " + text);
  }
}

struct BenchRow {
  int instance;
  std::string algorithm;
  int seeds;
  double mean_cost;
  int min_cost, max_cost;
  std::optional<int> oracle;
  int corner_bound;
  std::optional<int> line_bound;
  long long wall_ms;
};

void emit_row(std::ostream& out, const BenchRow& row) {
  out << "result," << row.instance << ',' << row.algorithm << ',' << row.seeds << ','
      << format_mean(row.mean_cost) << ',' << row.min_cost << ',' << row.max_cost << ',';
  if (row.oracle) out << *row.oracle;
  else out << "NA";
  out << ',' << row.corner_bound << ',';
  if (row.line_bound) out << *row.line_bound;
  else out << "NA";
  out << ',';
  if (row.oracle && *row.oracle > 0) out << format_mean(row.mean_cost / *row.oracle);
  else out << "NA";
  out << ",," << row.wall_ms << '\n';
}

int cmd_bench(const BenchArgs& args) {
  const auto [lo, hi] = parse_range(args.values);
  if (args.m < 1 || args.n < 1 || args.instances < 0 || args.seeds < 1)
    throw std::invalid_argument("bad bench dimensions");
  if (args.problem == "line" && args.m != 1)
    throw std::invalid_argument("line benchmarks need --m 1");
  const gen::TreeShape shape = gen::parse_tree_shape(args.trees);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) throw std::invalid_argument("cannot open " + args.output + " for writing");
    out = &file;
  }
  *out << "row_type,instance,algorithm,seeds,mean_cost,min_cost,max_cost,oracle,"
          "corner_bound,line_bound,mean_ratio,max_ratio,wall_ms\n";

  std::vector<std::string> algorithms;
  if (args.problem == "line") algorithms = {"full", "simplified"};
  else if (args.problem == "rects") algorithms = {"full", "greedy4"};
  else if (args.problem == "tree") algorithms = {"treextree"};
  else throw std::invalid_argument("unknown problem: " + args.problem);

  const Rng master(args.seed);
  std::map<std::string, std::vector<double>> ratios;

  for (int i = 0; i < args.instances; ++i) {
    Rng inst_rng = master.fork(2 * i);
    Matrix a = args.problem == "line" ? Matrix(1, 1) : gen::random_matrix(args.m, args.n, lo, hi, inst_rng);
    std::vector<Rational> v;
    std::optional<TreeInstance> ti;
    if (args.problem == "line") {
      v = gen::random_vector(args.n, lo, hi, inst_rng);
      a = Matrix(1, args.n);
      for (int j = 1; j <= args.n; ++j) a.at(1, j) = v[j - 1];
    } else if (args.problem == "tree") {
      Rng row_rng = inst_rng.fork(101), col_rng = inst_rng.fork(102);
      ti.emplace(a, gen::make_tree(shape, args.m, row_rng), gen::make_tree(shape, args.n, col_rng));
    }

    std::optional<int> oracle_cost;
    if (args.problem == "line") {
      const DeltaProfile d = compute_deltas(v);
      if (d.nonzero_count() <= args.exact_limit) oracle_cost = *oracle_zwp(d, args.exact_limit).cost;
    } else {
      const auto family = args.problem == "rects"
                              ? all_rectangles(args.m, args.n)
                              : allowed_tree_rectangles(*ti);
      const int k_start = args.problem == "rects" ? corner_lower_bound(a) : 0;
      const OracleResult r = oracle_min_explanation(a, family, -1, args.budget, k_start);
      if (r.status == OracleStatus::optimal) oracle_cost = r.cost;
    }
    const int corner = corner_lower_bound(a);
    const LineBound lb = line_lower_bound(a, args.exact_limit);

    for (const auto& algorithm : algorithms) {
      const auto start = std::chrono::steady_clock::now();
      long long total = 0;
      int min_cost = 0, max_cost = 0;
      for (int s = 0; s < args.seeds; ++s) {
        Rng run_rng = master.fork(2 * i + 1).fork(s);
        int cost = 0;
        if (args.problem == "line") {
          const Strategy strat = algorithm == "full" ? Strategy::full : Strategy::simplified;
          cost = static_cast<int>(explain_line(v, strat, run_rng).size());
        } else if (args.problem == "rects") {
          cost = algorithm == "greedy4" ? greedy_eliminate(a).cost()
                                        : explain_all_rects(a, Strategy::full, run_rng).cost();
        } else {
          cost = explain_tree_x_tree(*ti, run_rng).cost();
        }
        total += cost;
        min_cost = s == 0 ? cost : std::min(min_cost, cost);
        max_cost = s == 0 ? cost : std::max(max_cost, cost);
      }
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      BenchRow row{i,        algorithm, args.seeds,
                   static_cast<double>(total) / args.seeds, min_cost, max_cost,
                   oracle_cost, corner,
                   lb.available ? std::optional<int>(lb.bound) : std::nullopt, elapsed};
      emit_row(*out, row);
      if (oracle_cost && *oracle_cost > 0)
        ratios[algorithm].push_back(row.mean_cost / *oracle_cost);
    }
  }

  for (const auto& algorithm : algorithms) {
    const auto& r = ratios[algorithm];
    *out << "summary,," << algorithm << ",,,,,,,,";
    if (r.empty()) {
      *out << "NA,NA,\n";
    } else {
      double sum = 0, mx = 0;
      for (double x : r) {
        sum += x;
        mx = std::max(mx, x);
      }
      *out << format_mean(sum / r.size()) << ',' << format_mean(mx) << ",\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sparse rectangle decompositions of matrices"};
  app.require_subcommand(1);

  ExplainArgs explain_args;
  auto* explain = app.add_subcommand("explain", "Decompose a matrix into weighted rectangles");
  explain->add_option("--problem", explain_args.problem, "tree | rects | line")->required();
  explain->add_option("--input", explain_args.input, "instance file (.json or .csv)")->required();
  explain->add_option("--strategy", explain_args.strategy,
                      "exact | full | simplified | residual | greedy4 (rects only)");
  explain->add_option("--seed", explain_args.seed, "master seed");
  explain->add_option("--trials", explain_args.trials, "independent runs (tree problem)");
  explain->add_option("--output", explain_args.output, "output file (default stdout)");
  explain->add_option("--stage", explain_args.stage, "force packing stage: triples | quads");
  explain->add_option("--swap-size", explain_args.swap_size, "local search swap bound");
  explain->add_option("--exact-limit", explain_args.exact_limit,
                      "max nonzero deltas for exact 1-D solves");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check an explanation against a matrix");
  verify_cmd->add_option("--matrix", verify_args.matrix, "matrix file (.json or .csv)")->required();
  verify_cmd->add_option("--explanation", verify_args.explanation, "explanation file")->required();
  verify_cmd->add_option("--instance", verify_args.instance,
                         "also check tree-allowedness against this instance");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Certified minimum explanation (small instances)");
  oracle_cmd->add_option("--problem", oracle_args.problem, "tree | rects | line")->required();
  oracle_cmd->add_option("--input", oracle_args.input, "instance file")->required();
  oracle_cmd->add_option("--max-size", oracle_args.max_size, "largest subset size to try");
  oracle_cmd->add_option("--budget", oracle_args.budget, "search budget");
  oracle_cmd->add_option("--output", oracle_args.output, "witness output file");
  oracle_cmd->add_option("--exact-limit", oracle_args.exact_limit, "line-problem item limit");

  std::string corners_input, deltas_input;
  int corners_limit = 20, deltas_limit = 20;
  auto* corners_cmd = app.add_subcommand("corners", "Dump the corner grid and lower bounds");
  corners_cmd->add_option("--input", corners_input, "instance file")->required();
  corners_cmd->add_option("--exact-limit", corners_limit, "line-bound item limit");
  auto* deltas_cmd = app.add_subcommand("deltas", "Dump the 1-D delta profile");
  deltas_cmd->add_option("--input", deltas_input, "instance file (1-row or 1-column)")->required();
  deltas_cmd->add_option("--exact-limit", deltas_limit, "lower-bound item limit");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Random-instance benchmark vs oracle and bounds");
  bench->add_option("--problem", bench_args.problem, "tree | rects | line")->required();
  bench->add_option("--m", bench_args.m, "rows");
  bench->add_option("--n", bench_args.n, "columns");
  bench->add_option("--values", bench_args.values, "entry range LO..HI");
  bench->add_option("--instances", bench_args.instances, "number of random instances");
  bench->add_option("--seeds", bench_args.seeds, "seeds per instance");
  bench->add_option("--seed", bench_args.seed, "master seed");
  bench->add_option("--trees", bench_args.trees, "star | binary | random (tree problem)");
  bench->add_option("--budget", bench_args.budget, "oracle search budget");
  bench->add_option("--exact-limit", bench_args.exact_limit, "line/bound item limit");
  bench->add_option("--output", bench_args.output, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  const std::function<int()> run = [&]() -> int {
    if (app.got_subcommand(explain)) return cmd_explain(explain_args);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_args);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(oracle_args);
    if (app.got_subcommand(corners_cmd)) return cmd_corners(corners_input, corners_limit);
    if (app.got_subcommand(deltas_cmd)) return cmd_deltas(deltas_input, deltas_limit);
    if (app.got_subcommand(bench)) return cmd_bench(bench_args);
    return 2;
  };

  try {
    return run();
  } catch (const limit_error& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
