#include "rectexplain/setpacking.hpp"

#include <algorithm>
#include <map>

namespace rectexplain {

namespace {

class Packing {
 public:
  explicit Packing(const CandidateFamily& family) : family_(family) {}

  bool selected(int c) const { return std::binary_search(chosen_.begin(), chosen_.end(), c); }
  const std::vector<int>& chosen() const { return chosen_; }

  bool fits(int c) const {
    for (int item : family_.sets[c])
      if (owner_.count(item)) return false;
    return true;
  }

  // Disjoint from the selection minus `removed` (sorted candidate indices).
  bool fits_except(int c, const std::vector<int>& removed) const {
    for (int item : family_.sets[c]) {
      auto it = owner_.find(item);
      if (it != owner_.end() && !std::binary_search(removed.begin(), removed.end(), it->second))
        return false;
    }
    return true;
  }

  void add(int c) {
    chosen_.insert(std::lower_bound(chosen_.begin(), chosen_.end(), c), c);
    for (int item : family_.sets[c]) owner_[item] = c;
  }

  void remove(int c) {
    chosen_.erase(std::lower_bound(chosen_.begin(), chosen_.end(), c));
    for (int item : family_.sets[c]) owner_.erase(item);
  }

 private:
  const CandidateFamily& family_;
  std::vector<int> chosen_;      // ascending
  std::map<int, int> owner_;     // item -> owning candidate
};

// Picks `need` pairwise-disjoint candidates from `pool` (in pool order), all
// already known to fit the retained selection. Returns true and fills `picked`.
bool pick_disjoint(const CandidateFamily& family, const std::vector<int>& pool,
                   std::size_t from, int need, std::vector<int>& picked,
                   std::vector<int>& used_items) {
  if (need == 0) return true;
  for (std::size_t idx = from; idx < pool.size(); ++idx) {
    const int c = pool[idx];
    const auto& set = family.sets[c];
    bool clash = false;
    for (int item : set)
      if (std::find(used_items.begin(), used_items.end(), item) != used_items.end()) {
        clash = true;
        break;
      }
    if (clash) continue;
    picked.push_back(c);
    used_items.insert(used_items.end(), set.begin(), set.end());
    if (pick_disjoint(family, pool, idx + 1, need - 1, picked, used_items)) return true;
    picked.pop_back();
    used_items.resize(used_items.size() - set.size());
  }
  return false;
}

// Lex enumeration of p-subsets of `chosen`; returns true when an improving
// swap was applied.
bool try_swap(const CandidateFamily& family, Packing& packing, int p,
              std::vector<int>& removal, std::size_t from) {
  const auto chosen = packing.chosen();  // copy: packing mutates on success
  if (static_cast<int>(removal.size()) == p) {
    std::vector<int> freed;
    for (int c : removal)
      freed.insert(freed.end(), family.sets[c].begin(), family.sets[c].end());
    std::sort(freed.begin(), freed.end());
    // Candidates touching a freed item and fitting the retained selection.
    // A replacement touching no freed item would fit the whole selection and
    // is found earlier by the p = 0 pass, so this pool is sufficient.
    std::vector<int> pool;
    for (int c = 0; c < static_cast<int>(family.sets.size()); ++c) {
      if (packing.selected(c) && !std::binary_search(removal.begin(), removal.end(), c)) continue;
      bool touches = false;
      for (int item : family.sets[c])
        if (std::binary_search(freed.begin(), freed.end(), item)) {
          touches = true;
          break;
        }
      if (touches && packing.fits_except(c, removal)) pool.push_back(c);
    }
    std::vector<int> picked, used;
    if (pick_disjoint(family, pool, 0, p + 1, picked, used)) {
      for (int c : removal) packing.remove(c);
      for (int c : picked) packing.add(c);
      return true;
    }
    return false;
  }
  for (std::size_t i = from; i < chosen.size(); ++i) {
    removal.push_back(chosen[i]);
    if (try_swap(family, packing, p, removal, i + 1)) {
      removal.pop_back();
      return true;
    }
    removal.pop_back();
  }
  return false;
}

}  // namespace

std::vector<int> greedy_maximal(const CandidateFamily& family) {
  Packing packing(family);
  for (int c = 0; c < static_cast<int>(family.sets.size()); ++c)
    if (packing.fits(c)) packing.add(c);
  return packing.chosen();
}

PackResult local_search_pack(const CandidateFamily& family, int swap_size,
                             std::size_t max_improvements) {
  Packing packing(family);
  for (int c : greedy_maximal(family)) packing.add(c);

  PackResult result;
  bool improved = true;
  while (improved) {
    if (result.improvements >= max_improvements) {
      result.iteration_cap_hit = true;
      break;
    }
    improved = false;
    // p = 0: plain additions keep the packing maximal after swaps.
    for (int c = 0; c < static_cast<int>(family.sets.size()) && !improved; ++c)
      if (!packing.selected(c) && packing.fits(c)) {
        packing.add(c);
        improved = true;
      }
    for (int p = 1; p <= swap_size && !improved; ++p) {
      std::vector<int> removal;
      improved = try_swap(family, packing, p, removal, 0);
    }
    if (improved) ++result.improvements;
  }
  result.chosen = packing.chosen();
  return result;
}

}  // namespace rectexplain
