#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sprinkle {

// SplitMix64 step. Also the basis for substream derivation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Stream purposes; part of the replay contract.
enum class Stream : uint64_t {
  kNibbleExpose = 1,
  kBiteSelect = 2,
  kNibbleRetry = 3,
  kPhase2Expose = 4,
  kSolver = 5,
  kPartitions = 6,
  kSubsetExpose = 7,
  kAssign = 8,
  kColors = 9,
};

// Derives a 64-bit substream state from (seed, purpose, a, b). Rounds and
// steps get independent, schedule-order-free streams this way.
inline uint64_t substream(uint64_t seed, Stream purpose, uint64_t a = 0,
                          uint64_t b = 0) {
  uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(purpose));
  h = mix64(h + 0x9e3779b97f4a7c15ULL * (a + 1));
  h = mix64(h + 0x9e3779b97f4a7c15ULL * (b + 1));
  return h;
}

// Minimal deterministic generator (SplitMix64 sequence). All randomness in
// the project flows through this class so replays are platform-independent;
// std::uniform_* distributions are deliberately avoided.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() { return splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, bound). bound must be positive.
  uint64_t below(uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(next()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      uint64_t t = (0 - bound) % bound;
      while (lo < t) {
        m = static_cast<__uint128_t>(next()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Number of failures before the first success of a Bernoulli(p) sequence.
  // Used for geometric skipping over canonically ordered edge blocks.
  uint64_t geometric_gap(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return std::numeric_limits<uint64_t>::max();
    double u = 1.0 - uniform();  // (0, 1]
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (!(g < 9.0e18)) return std::numeric_limits<uint64_t>::max();
    return static_cast<uint64_t>(g);
  }

  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; --i) {
      uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace sprinkle
