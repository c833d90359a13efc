#pragma once

#include <cstdint>
#include <random>

namespace treeshield::rng {

// Draw helpers built on raw mt19937_64 output. std::uniform_*_distribution
// is implementation-defined, so seeded results would not be stable across
// standard libraries; these are.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Unbiased integer in [0, n), n >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

/// Uniform double in [0, 1).
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, hi].
inline double uniform_positive(std::mt19937_64& gen, double hi) {
  return hi * (1.0 - uniform_unit(gen));
}

}  // namespace treeshield::rng
