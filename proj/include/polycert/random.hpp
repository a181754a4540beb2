#pragma once

#include <cstdint>

#include "polycert/arith.hpp"

namespace polycert {

/// splitmix64 generator. Small, seedable from any 64-bit value, and stable
/// across platforms so seeded runs are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] (rejection sampling, no modulo bias).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// p/q with p uniform in [-(2^31-1), 2^31-1] and q uniform in [1, 2^31-1].
  Rational rational();

 private:
  std::uint64_t state_;
};

}  // namespace polycert
