#pragma once

#include <cstdint>

namespace magspec {

/// SplitMix64 finalizer (Steele, Lea and Flood); a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based draw: a pure function of (seed, stream, index), so any
/// evaluation order, serial or parallel, reproduces the same numbers.
constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0xD1B54A32D192ED03ULL));
  return splitmix64(h ^ (index * 0xAEF17502108EF2D9ULL));
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return static_cast<double>(counter_bits(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Standard normal by Box-Muller on the counter pair (2 index, 2 index + 1).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace magspec
