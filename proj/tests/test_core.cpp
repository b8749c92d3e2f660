#include <doctest.h>

#include "magspec/core.hpp"
#include "magspec/flux.hpp"
#include "magspec/random.hpp"

using namespace magspec;

TEST_CASE("hermitian matrix validates and symmetrizes") {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
  const HermitianMatrix h(m);
  CHECK(h.dim() == 2);
  CHECK(HermitianMatrix::hermiticity_defect(h.matrix()) == 0.0);

  m(0, 1) = Complex(0.0, 1.1);
  CHECK_THROWS_AS(HermitianMatrix{m}, NumericalError);
  CHECK_THROWS_AS(HermitianMatrix{CMatrix::Zero(2, 3)}, InvalidArgument);
}

TEST_CASE("operator norm of a diagonal matrix") {
  CMatrix m = CMatrix::Zero(3, 3);
  m.diagonal() << 1.0, -5.0, 2.0;
  CHECK(operator_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("rational flux parsing and reduction") {
  const auto f = RationalFlux::parse("2/5");
  CHECK(f.p() == 2);
  CHECK(f.q() == 5);
  CHECK(RationalFlux::parse("0/1") == RationalFlux(0, 1));
  CHECK(RationalFlux::parse("3") == RationalFlux(3, 1));
  CHECK(RationalFlux::parse("-1/3").value() == doctest::Approx(-1.0 / 3.0));
  CHECK_THROWS_AS(RationalFlux::parse("3/6"), InvalidArgument);
  CHECK_THROWS_AS(RationalFlux::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(RationalFlux::parse("x/3"), InvalidArgument);
  CHECK_THROWS_AS(RationalFlux(2, 4), InvalidArgument);
  CHECK(RationalFlux::reduced(3, 6) == RationalFlux(1, 2));
  CHECK(RationalFlux(7, 3).mod_one() == RationalFlux(1, 3));
  CHECK(RationalFlux(-1, 3).mod_one() == RationalFlux(2, 3));
  CHECK(RationalFlux(1, 3).to_string() == "1/3");
}

TEST_CASE("continued-fraction approximation") {
  // Golden-mean convergents are ratios of consecutive Fibonacci numbers.
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(RationalFlux::approximate(golden, 13) == RationalFlux(8, 13));
  CHECK(RationalFlux::approximate(golden, 89) == RationalFlux(55, 89));
  CHECK(RationalFlux::approximate(0.125, 64) == RationalFlux(1, 8));
  CHECK(RationalFlux::approximate(0.3, 100) == RationalFlux(3, 10));
}

TEST_CASE("counter-based draws are pure functions of their counters") {
  CHECK(counter_bits(1, 2, 3) == counter_bits(1, 2, 3));
  CHECK(counter_bits(1, 2, 3) != counter_bits(1, 2, 4));
  CHECK(counter_bits(1, 2, 3) != counter_bits(2, 2, 3));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = counter_uniform(9, 0, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // Moments of the normal draws.
  double s = 0.0;
  double s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = counter_normal(5, 1, static_cast<std::uint64_t>(i));
    s += g;
    s2 += g * g;
  }
  CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}
