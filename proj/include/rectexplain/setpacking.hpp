#pragma once

#include <cstddef>
#include <vector>

namespace rectexplain {

// Candidate k-element sets over integer item ids. Callers guarantee the
// semantic side conditions (here: zero delta-sum); this module only packs.
struct CandidateFamily {
  int set_size = 0;
  std::vector<std::vector<int>> sets;  // each sorted, |set| == set_size
};

struct PackResult {
  std::vector<int> chosen;  // indices into family.sets, ascending
  bool iteration_cap_hit = false;
  std::size_t improvements = 0;
};

// Maximal disjoint subfamily, scanning candidates in input order.
std::vector<int> greedy_maximal(const CandidateFamily& family);

// Bounded-swap local search seeded by greedy_maximal: repeatedly replace any
// p <= swap_size chosen sets by p + 1 pairwise-disjoint candidates until no
// such improvement exists. First-improvement with removals and candidates in
// fixed order, so the result is deterministic. The improvement count is capped
// (never silently: the flag reports it).
PackResult local_search_pack(const CandidateFamily& family, int swap_size,
                             std::size_t max_improvements = 100'000);

}  // namespace rectexplain
