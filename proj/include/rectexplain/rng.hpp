#pragma once

#include <cstdint>

namespace rectexplain {

// Deterministic cross-platform random source (splitmix64). The standard
// library's engines are portable but its distributions are not, and the
// experiments must reproduce bit-for-bit across platforms, so bounded draws
// are done here by rejection.
//
// Seed splitting: fork(stream) derives an independent generator from the
// *construction* seed (not the current state), so derived streams do not
// depend on how much the parent has been consumed. The scheme is
//   child_seed = mix(seed ^ (stream + 1) * 0x9E3779B97F4A7C15)
// with mix = the splitmix64 output function.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound); bound must be nonzero. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // True with probability num/den.
  bool chance(std::uint32_t num, std::uint32_t den) { return below(den) < num; }

  Rng fork(std::uint64_t stream) const {
    return Rng(mix(seed_ ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace rectexplain
