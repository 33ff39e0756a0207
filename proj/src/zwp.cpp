#include "rectexplain/zwp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rectexplain/errors.hpp"
#include "rectexplain/oracle.hpp"
#include "rectexplain/setpacking.hpp"

namespace rectexplain {

bool DeltaProfile::sums_to_zero() const {
  Rational s = 0;
  for (const auto& d : deltas) s += d;
  return s == 0;
}

int DeltaProfile::nonzero_count() const {
  return static_cast<int>(std::count_if(deltas.begin(), deltas.end(),
                                        [](const Rational& d) { return d != 0; }));
}

DeltaProfile compute_deltas(const std::vector<Rational>& v) {
  if (v.empty()) throw std::invalid_argument("empty vector");
  const int n = static_cast<int>(v.size());
  DeltaProfile p;
  p.deltas.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const Rational& next = (k + 1 <= n) ? v[k] : Rational(0);  // a_{k+1}
    const Rational& prev = (k >= 1) ? v[k - 1] : Rational(0);  // a_k
    p.deltas[k] = next - prev;
  }
  return p;
}

bool is_valid_partition(const ZeroPartition& p, const DeltaProfile& d) {
  if (p.item_count != d.item_count()) return false;
  std::vector<bool> seen(d.item_count(), false);
  int covered = 0;
  for (const auto& set : p.sets) {
    if (set.empty()) return false;
    Rational sum = 0;
    for (int k : set) {
      if (k < 0 || k >= d.item_count() || seen[k]) return false;
      seen[k] = true;
      ++covered;
      sum += d.deltas[k];
    }
    if (sum != 0) return false;
  }
  return covered == d.item_count();
}

std::vector<WeightedInterval> partition_to_intervals(const ZeroPartition& p,
                                                     const DeltaProfile& d) {
  if (!is_valid_partition(p, d)) throw std::invalid_argument("invalid zero partition");
  std::vector<WeightedInterval> out;
  for (const auto& set : p.sets) {
    const int k_min = *std::min_element(set.begin(), set.end());
    for (int k : set) {
      if (k == k_min) continue;
      const Rational w = -d.deltas[k];
      if (w != 0) out.push_back({k_min + 1, k, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const WeightedInterval& a, const WeightedInterval& b) {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  });
  return out;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::exact: return "exact";
    case Strategy::full: return "full";
    case Strategy::simplified: return "simplified";
    case Strategy::residual: return "residual";
  }
  return "?";
}

ZwpStep1 zwp_step1(const DeltaProfile& d) {
  ZwpStep1 step;
  std::map<Rational, std::vector<int>> by_value;
  for (int k = 0; k < d.item_count(); ++k) {
    if (d.deltas[k] == 0)
      step.sets.push_back({k});
    else
      by_value[d.deltas[k]].push_back(k);
  }
  std::vector<bool> paired(d.item_count(), false);
  for (auto& [value, indices] : by_value) {
    if (value < 0) continue;  // handled from the positive side
    auto neg = by_value.find(-value);
    if (neg == by_value.end()) continue;
    const std::size_t pairs = std::min(indices.size(), neg->second.size());
    for (std::size_t i = 0; i < pairs; ++i) {
      std::vector<int> pair{indices[i], neg->second[i]};
      std::sort(pair.begin(), pair.end());
      step.sets.push_back(pair);
      paired[indices[i]] = paired[neg->second[i]] = true;
    }
  }
  for (int k = 0; k < d.item_count(); ++k)
    if (d.deltas[k] != 0 && !paired[k]) step.remaining.push_back(k);
  std::sort(step.sets.begin(), step.sets.end());
  return step;
}

namespace {

// Zero-sum triples {i < j < k} among `items`. O(r^2) by looking up the value
// that completes each pair; capped.
CandidateFamily zero_sum_triples(const DeltaProfile& d, const std::vector<int>& items,
                                 std::size_t cap, bool& cap_hit) {
  CandidateFamily family;
  family.set_size = 3;
  std::map<Rational, std::vector<int>> by_value;
  for (int k : items) by_value[d.deltas[k]].push_back(k);  // ascending per value
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      const Rational target = -(d.deltas[items[a]] + d.deltas[items[b]]);
      auto it = by_value.find(target);
      if (it == by_value.end()) continue;
      for (int k : it->second) {
        if (k <= items[b]) continue;
        if (family.sets.size() >= cap) {
          cap_hit = true;
          family.sets.clear();
          return family;
        }
        family.sets.push_back({items[a], items[b], k});
      }
    }
  return family;
}

// Zero-sum quadruples {a < b < c < e}: a sorted quadruple sums to zero iff its
// first pair's sum is the negation of its second pair's, so matching pair sums
// enumerates each set exactly once.
CandidateFamily zero_sum_quads(const DeltaProfile& d, const std::vector<int>& items,
                               std::size_t cap, bool& cap_hit) {
  CandidateFamily family;
  family.set_size = 4;
  std::map<Rational, std::vector<std::pair<int, int>>> by_sum;
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b)
      by_sum[d.deltas[items[a]] + d.deltas[items[b]]].push_back({items[a], items[b]});
  for (auto& [sum, pairs] : by_sum) {
    auto it = by_sum.find(-sum);
    if (it == by_sum.end()) continue;
    for (const auto& [a, b] : pairs)
      for (const auto& [c, e] : it->second) {
        if (c <= b) continue;  // forces a < b < c < e and deduplicates
        if (family.sets.size() >= cap) {
          cap_hit = true;
          family.sets.clear();
          return family;
        }
        family.sets.push_back({a, b, c, e});
      }
  }
  std::sort(family.sets.begin(), family.sets.end());
  return family;
}

ZwpSolution approximate(const DeltaProfile& d, bool use_coin, Rng& rng,
                        const ZwpOptions& options) {
  ZwpSolution sol;
  sol.partition.item_count = d.item_count();
  ZwpStep1 step1 = zwp_step1(d);
  sol.partition.sets = step1.sets;

  PackingStage stage = options.forced_stage;
  if (stage == PackingStage::none)
    stage = (!use_coin || rng.chance(2, 3)) ? PackingStage::triples : PackingStage::quads;
  sol.stage_used = stage;

  CandidateFamily family =
      stage == PackingStage::triples
          ? zero_sum_triples(d, step1.remaining, options.candidate_cap, sol.candidate_cap_hit)
          : zero_sum_quads(d, step1.remaining, options.candidate_cap, sol.candidate_cap_hit);

  std::vector<bool> packed(d.item_count(), false);
  if (!sol.candidate_cap_hit && !family.sets.empty()) {
    PackResult pack = local_search_pack(family, options.swap_size, options.pack_iteration_cap);
    sol.pack_cap_hit = pack.iteration_cap_hit;
    for (int c : pack.chosen) {
      sol.partition.sets.push_back(family.sets[c]);
      for (int k : family.sets[c]) packed[k] = true;
    }
  }

  std::vector<int> residual;
  for (int k : step1.remaining)
    if (!packed[k]) residual.push_back(k);
  if (!residual.empty()) sol.partition.sets.push_back(residual);
  return sol;
}

}  // namespace

ZwpSolution solve_zwp(const DeltaProfile& d, Strategy strategy, Rng& rng,
                      const ZwpOptions& options) {
  if (!d.sums_to_zero()) throw std::invalid_argument("delta profile does not sum to zero");
  switch (strategy) {
    case Strategy::exact: {
      OracleResult r = oracle_zwp(d, options.exact_limit);
      ZwpSolution sol;
      sol.partition = *r.partition;
      return sol;
    }
    case Strategy::residual: {
      ZwpSolution sol;
      sol.partition.item_count = d.item_count();
      std::vector<int> rest;
      for (int k = 0; k < d.item_count(); ++k) {
        if (d.deltas[k] == 0)
          sol.partition.sets.push_back({k});
        else
          rest.push_back(k);
      }
      if (!rest.empty()) sol.partition.sets.push_back(rest);
      return sol;
    }
    case Strategy::full:
      return approximate(d, /*use_coin=*/true, rng, options);
    case Strategy::simplified:
      return approximate(d, /*use_coin=*/false, rng, options);
  }
  throw std::invalid_argument("unknown strategy");
}

std::vector<WeightedInterval> explain_line(const std::vector<Rational>& v, Strategy strategy,
                                           Rng& rng, const ZwpOptions& options) {
  const DeltaProfile d = compute_deltas(v);
  const ZwpSolution sol = solve_zwp(d, strategy, rng, options);
  auto intervals = partition_to_intervals(sol.partition, d);
  // Point-sum self check.
  std::vector<Rational> sums(v.size());
  for (const auto& iv : intervals)
    for (int k = iv.lo; k <= iv.hi; ++k) sums[k - 1] += iv.weight;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sums[k] != v[k]) throw std::logic_error("explain_line reconstruction mismatch");
  return intervals;
}

int zwp_lower_bound(const DeltaProfile& d, int exact_limit) {
  const int r = d.nonzero_count();
  if (r == 0) return 0;
  if (r <= exact_limit) return *oracle_zwp(d, exact_limit).cost;
  return (r + 1) / 2;  // pairing bound
}

}  // namespace rectexplain
