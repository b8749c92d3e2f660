#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace magspec {

/// Magnetic flux per plaquette (or per unit cell) in flux quanta, stored as a
/// reduced fraction p/q with q >= 1.
class RationalFlux {
 public:
  /// Zero flux, 0/1.
  RationalFlux() = default;

  /// Throws InvalidArgument unless q >= 1 and gcd(|p|, q) == 1.
  RationalFlux(std::int64_t p, std::int64_t q);

  /// Parses "p/q" or a bare integer "p". Non-reduced fractions such as "3/6"
  /// are rejected, not silently reduced.
  static RationalFlux parse(std::string_view text);

  /// Reduces p/q first; use this only where reduction is the intent.
  static RationalFlux reduced(std::int64_t p, std::int64_t q);

  /// Best rational approximation of x with denominator at most q_max, taken
  /// from the continued-fraction convergents (and semiconvergents) of x.
  static RationalFlux approximate(double x, std::int64_t q_max = 64);

  [[nodiscard]] std::int64_t p() const { return p_; }
  [[nodiscard]] std::int64_t q() const { return q_; }
  [[nodiscard]] double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }

  /// Representative with 0 <= p < q.
  [[nodiscard]] RationalFlux mod_one() const;
  [[nodiscard]] RationalFlux negated() const { return RationalFlux(-p_, q_); }
  [[nodiscard]] RationalFlux plus_integer(std::int64_t n) const { return RationalFlux(p_ + n * q_, q_); }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const RationalFlux&, const RationalFlux&) = default;

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

}  // namespace magspec
