#ifndef EISP_RNG_HPP
#define EISP_RNG_HPP

#include <cstdint>
#include <vector>

#include "eisp/errors.hpp"

namespace eisp {

// SplitMix64. Self-contained so that seeded runs are reproducible across
// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t next_below(uint64_t bound) {
    invariant(bound > 0, "next_below with zero bound");
    uint64_t mask = ~0ULL;
    uint64_t pow2 = bound - 1;
    pow2 |= pow2 >> 1;
    pow2 |= pow2 >> 2;
    pow2 |= pow2 >> 4;
    pow2 |= pow2 >> 8;
    pow2 |= pow2 >> 16;
    pow2 |= pow2 >> 32;
    mask = pow2;
    for (;;) {
      uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  int next_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Number of failures before the first success; success probability p in (0, 1].
  int next_geometric(double p) {
    invariant(p > 0.0 && p <= 1.0, "geometric parameter out of (0,1]");
    int k = 0;
    while (next_unit() >= p) {
      ++k;
      invariant(k < 100000, "geometric draw did not terminate");
    }
    return k;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

// Independent substream: hashes (seed, stream) into a fresh seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  Rng g(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
  g.next_u64();
  return g.next_u64();
}

}  // namespace eisp

#endif  // EISP_RNG_HPP
