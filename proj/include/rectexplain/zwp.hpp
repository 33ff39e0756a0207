#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rectexplain/rational.hpp"
#include "rectexplain/rng.hpp"

namespace rectexplain {

// First differences of a zero-padded vector: for a length-n vector a with
// a_0 = a_{n+1} = 0, deltas[k] = a_{k+1} - a_k for k = 0..n. The entries
// telescope to zero.
struct DeltaProfile {
  std::vector<Rational> deltas;  // item indices 0..n

  int item_count() const { return static_cast<int>(deltas.size()); }
  int vector_length() const { return item_count() - 1; }
  bool sums_to_zero() const;
  int nonzero_count() const;
};

DeltaProfile compute_deltas(const std::vector<Rational>& v);  // throws on empty v

// Disjoint zero-sum index sets covering {0..n}. The objective charges
// |S| - 1 per set, i.e. cost = items - sets.
struct ZeroPartition {
  std::vector<std::vector<int>> sets;  // each sorted ascending
  int item_count = 0;

  int cost() const { return item_count - static_cast<int>(sets.size()); }
};

bool is_valid_partition(const ZeroPartition& p, const DeltaProfile& d);

struct WeightedInterval {
  int lo = 1, hi = 1;  // 1-based inclusive
  Rational weight;     // nonzero

  friend bool operator==(const WeightedInterval&, const WeightedInterval&) = default;
};

// Turns a partition into intervals: each set S with minimum element k_t
// contributes, for every other k in S, the interval [k_t + 1, k] with weight
// -delta_k (zero weights dropped). The result covers every point k with total
// weight a_k. Output sorted by (lo, hi). Throws std::invalid_argument on an
// invalid partition.
std::vector<WeightedInterval> partition_to_intervals(const ZeroPartition& p,
                                                     const DeltaProfile& d);

enum class Strategy { exact, full, simplified, residual };

const char* strategy_name(Strategy s);

enum class PackingStage { none, triples, quads };

struct ZwpOptions {
  int exact_limit = 20;                 // max nonzero items for the exact strategies
  int swap_size = 2;                    // local-search swap bound
  std::size_t candidate_cap = 2'000'000;  // max enumerated packing candidates
  std::size_t pack_iteration_cap = 100'000;
  PackingStage forced_stage = PackingStage::none;  // overrides the 2/3-1/3 coin
};

struct ZwpSolution {
  ZeroPartition partition;
  PackingStage stage_used = PackingStage::none;
  bool candidate_cap_hit = false;  // stage fell back to the residual set
  bool pack_cap_hit = false;
};

// Zero-items are free singletons under every strategy. Strategies:
//   exact      - certified optimum (bitmask DP); nonzero items <= exact_limit
//                or limit_error is thrown.
//   full       - max disjoint +/- pairs, then with probability 2/3 a 3-set
//                packing over zero-sum triples else a 4-set packing over
//                zero-sum quadruples (one coin draw per call), then one
//                residual set for whatever remains.
//   simplified - pairs, then triples always, then the residual set.
//   residual   - all nonzero items in one set.
// Throws std::invalid_argument when the profile does not sum to zero.
ZwpSolution solve_zwp(const DeltaProfile& d, Strategy strategy, Rng& rng,
                      const ZwpOptions& options = {});

// compute_deltas -> solve_zwp -> partition_to_intervals, with a point-sum
// self-check (logic_error on failure, which would indicate a bug).
std::vector<WeightedInterval> explain_line(const std::vector<Rational>& v, Strategy strategy,
                                           Rng& rng, const ZwpOptions& options = {});

// (items) - (max sets): exact via the DP when the nonzero count is within
// exact_limit, else the pairing bound ceil(nonzero/2) (every set containing
// nonzero items has size >= 2). Both are valid lower bounds.
int zwp_lower_bound(const DeltaProfile& d, int exact_limit = 20);

// Step 1 of full/simplified, exposed for the exchange-argument tests: zero
// singletons plus a maximum family of disjoint {x, -x} pairs (per value,
// lowest indices first), and the leftover items.
struct ZwpStep1 {
  std::vector<std::vector<int>> sets;
  std::vector<int> remaining;  // ascending
};

ZwpStep1 zwp_step1(const DeltaProfile& d);

}  // namespace rectexplain
