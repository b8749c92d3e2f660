#include "magspec/random.hpp"

#include <cmath>

#include "magspec/core.hpp"

namespace magspec {

double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  // 1 - u lies in (0, 1], keeping the logarithm finite.
  const double u1 = 1.0 - counter_uniform(seed, stream, 2 * index);
  const double u2 = counter_uniform(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace magspec
