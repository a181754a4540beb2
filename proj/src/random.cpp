#include "polycert/random.hpp"

#include <limits>

namespace polycert {

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Largest multiple of span that fits; draws above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return lo + static_cast<std::int64_t>(r % span);
}

Rational SplitMix64::rational() {
  constexpr std::int64_t kMax = (std::int64_t{1} << 31) - 1;
  std::int64_t p = uniform(-kMax, kMax);
  std::int64_t q = uniform(1, kMax);
  Rational r{Integer(static_cast<long>(p)), Integer(static_cast<long>(q))};
  r.canonicalize();
  return r;
}

}  // namespace polycert
