#include "magspec/flux.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "magspec/core.hpp"

namespace magspec {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InvalidArgument("flux '" + std::string(whole) + "': expected p/q with integer p, q");
  }
  return v;
}

}  // namespace

RationalFlux::RationalFlux(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (q_ < 1) {
    throw InvalidArgument("flux " + std::to_string(p) + "/" + std::to_string(q) +
                          ": denominator must be positive");
  }
  if (std::gcd(p_ < 0 ? -p_ : p_, q_) != 1) {
    throw InvalidArgument("flux " + std::to_string(p) + "/" + std::to_string(q) +
                          " is not reduced (gcd(|p|, q) != 1)");
  }
}

RationalFlux RationalFlux::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return RationalFlux(parse_int(text, text), 1);
  }
  return RationalFlux(parse_int(text.substr(0, slash), text),
                      parse_int(text.substr(slash + 1), text));
}

RationalFlux RationalFlux::reduced(std::int64_t p, std::int64_t q) {
  if (q == 0) throw InvalidArgument("flux: zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const auto g = std::gcd(p < 0 ? -p : p, q);
  return RationalFlux(p / g, q / g);
}

RationalFlux RationalFlux::approximate(double x, std::int64_t q_max) {
  if (!std::isfinite(x)) throw InvalidArgument("flux approximation: non-finite value");
  if (q_max < 1) throw InvalidArgument("flux approximation: q_max must be >= 1");

  // Convergents h_n/k_n; the best approximation with k <= q_max is either the
  // last admissible convergent or a semiconvergent built on it.
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  std::int64_t k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  RationalFlux best = reduced(h, k);
  while (rem > 1e-15) {
    const double inv = 1.0 / rem;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    rem = inv - static_cast<double>(a);
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > q_max) {
      const std::int64_t t = (q_max - k_prev) / k;
      if (t > 0) {
        const auto semi = reduced(t * h + h_prev, t * k + k_prev);
        if (std::abs(semi.value() - x) < std::abs(best.value() - x)) best = semi;
      }
      break;
    }
    const std::int64_t h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    best = reduced(h, k);
  }
  return best;
}

RationalFlux RationalFlux::mod_one() const {
  std::int64_t p = p_ % q_;
  if (p < 0) p += q_;
  return RationalFlux(p, q_);
}

std::string RationalFlux::to_string() const {
  return std::to_string(p_) + "/" + std::to_string(q_);
}

}  // namespace magspec
