#pragma once

#include <cmath>
#include <cstdint>

namespace hcube {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Independent random stream for trial `index` of a run seeded with `seed`.
/// The starting state is mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15)); draws
/// then follow the SplitMix64 sequence. Uniform variates use the top 53 bits,
/// exponential variates use -log1p(-u), so results do not depend on the
/// standard library's distribution implementations.
class TrialStream {
public:
  TrialStream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double exponential() { return -std::log1p(-uniform()); }

  bool bernoulli(double prob) { return uniform() < prob; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling against the largest multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

private:
  std::uint64_t state_;
};

}  // namespace hcube
