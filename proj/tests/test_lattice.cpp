#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "magspec/lattice.hpp"
#include "magspec/random.hpp"
#include "magspec/spectral.hpp"

using namespace magspec;

namespace {

std::vector<double> eig(const HermitianMatrix& h) { return eigenvalues_hermitian(h); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> negated_sorted(std::vector<double> v) {
  for (double& x : v) x = -x;
  std::sort(v.begin(), v.end());
  return v;
}

double wrap_unit(double x) { return x - std::round(x); }

}  // namespace

TEST_CASE("zero flux fiber is the nearest-neighbour dispersion") {
  for (double k1 : {0.0, 0.3, 2.0}) {
    for (double k2 : {0.0, 1.1, -2.5}) {
      const auto h = hofstadter_fiber(RationalFlux(0, 1), k1, k2);
      REQUIRE(h.dim() == 1);
      CHECK(h(0, 0).real() == doctest::Approx(2.0 * std::cos(k1) + 2.0 * std::cos(k2)));
    }
  }
}

TEST_CASE("half flux fiber matches the closed form") {
  for (double k1 : {0.0, 0.4, 1.3, 2.9}) {
    for (double k2 : {0.2, 0.9, 3.0}) {
      const auto e = eig(hofstadter_fiber(RationalFlux(1, 2), k1, k2));
      const double r = std::sqrt(4.0 + 2.0 * std::cos(2.0 * k1) + 2.0 * std::cos(2.0 * k2));
      CHECK(e[0] == doctest::Approx(-r).epsilon(1e-12));
      CHECK(e[1] == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("hofstadter fiber symmetries") {
  for (const auto& flux : {RationalFlux(1, 3), RationalFlux(2, 5), RationalFlux(3, 7)}) {
    const double q = static_cast<double>(flux.q());
    for (double k1 : {0.1, 1.7}) {
      for (double k2 : {0.4, 2.2}) {
        const auto h = hofstadter_fiber(flux, k1, k2);
        CHECK(HermitianMatrix::hermiticity_defect(h.matrix()) < 1e-14);
        const auto e = eig(h);
        // k1 period 2pi/q.
        CHECK(max_diff(e, eig(hofstadter_fiber(flux, k1 + kTwoPi / q, k2))) < 1e-12);
        // H(k + (pi, pi)) = -H(k).
        CHECK(max_diff(negated_sorted(e), eig(hofstadter_fiber(flux, k1 + kPi, k2 + kPi))) < 1e-12);
        // alpha + 1 gives the same matrix.
        CHECK((h.matrix() - hofstadter_fiber(flux.plus_integer(1), k1, k2).matrix()).norm() < 1e-12);
        // -alpha is the complex conjugate at -k.
        CHECK(max_diff(e, eig(hofstadter_fiber(flux.negated(), -k1, -k2))) < 1e-12);
      }
    }
  }
}

TEST_CASE("clock and shift obey the Weyl relation") {
  const RationalFlux flux(2, 5);
  const CMatrix U = shift_matrix(5);
  const CMatrix V = clock_matrix(flux);
  const Complex omega = std::polar(1.0, kTwoPi * flux.value());
  CHECK((V * U - omega * U * V).norm() < 1e-13);
}

TEST_CASE("peierls quantization of the nearest-neighbour band reproduces the hofstadter fiber") {
  for (const auto& flux : {RationalFlux(1, 3), RationalFlux(2, 5)}) {
    const auto family = peierls_quantize(FourierDispersion::nearest_neighbour(), flux);
    for (int i = 0; i < 7; ++i) {
      const double k1 = 0.37 * i;
      const double k2 = 1.1 - 0.29 * i;
      CHECK(max_diff(eig(family(k1, k2)), eig(hofstadter_fiber(flux, k1, k2))) < 1e-10);
    }
  }
}

TEST_CASE("peierls quantization of a longer-range dispersion stays hermitian") {
  FourierDispersion d = FourierDispersion::nearest_neighbour();
  d.add_cosine(1, 1, 0.3).add_cosine(2, -1, 0.1);
  REQUIRE(d.is_real());
  const auto family = peierls_quantize(d, RationalFlux(1, 4));
  CHECK(HermitianMatrix::hermiticity_defect(family(0.3, 0.8).matrix()) < 1e-13);
  // At zero flux the quantized fiber is the dispersion itself.
  const auto trivial = peierls_quantize(d, RationalFlux(0, 1));
  CHECK(trivial(0.3, 0.8)(0, 0).real() == doctest::Approx(d.evaluate(0.3, 0.8).real()));

  FourierDispersion complex_only({{1, 0, Complex(1.0, 0.0)}});
  CHECK_FALSE(complex_only.is_real());
  CHECK_THROWS_AS(peierls_quantize(complex_only, RationalFlux(1, 3)), InvalidArgument);
}

TEST_CASE("harper fibers cover the hofstadter fibers (duality)") {
  for (const auto& flux : {RationalFlux(1, 3), RationalFlux(2, 5)}) {
    for (double k1 : {0.2, 1.3}) {
      for (double k2 : {0.5, 2.7}) {
        // theta = k2 / 2pi and k = k1.
        CHECK(max_diff(eig(harper_fiber(flux, k2 / kTwoPi, k1)), eig(hofstadter_fiber(flux, k1, k2))) < 1e-12);
      }
    }
  }
}

TEST_CASE("symmetric gauge box carries flux 2B through every plaquette") {
  for (int i = 0; i < 10; ++i) {
    const double B = counter_uniform(2024, 0, static_cast<std::uint64_t>(i)) - 0.5;
    const BoxOperator op = symmetric_gauge_box(B, 7, Boundary::Open);
    CHECK(HermitianMatrix::hermiticity_defect(op.matrix.matrix()) < 1e-14);
    for (double f : plaquette_fluxes(op)) CHECK(std::abs(wrap_unit(f - 2.0 * B)) < 1e-12);
  }
}

TEST_CASE("magnetic-periodic torus closes every plaquette including the seams") {
  // 2 B L^2 must be an integer.
  for (const auto& [B, L] : std::vector<std::pair<double, int>>{{1.0 / 8, 16}, {1.0 / 6, 6}, {0.1, 5}, {0.3, 10}}) {
    const BoxOperator op = symmetric_gauge_box(B, L, Boundary::MagneticPeriodic);
    const auto fluxes = plaquette_fluxes(op);
    CHECK(fluxes.size() == static_cast<std::size_t>(L * L));
    for (double f : fluxes) CHECK(std::abs(wrap_unit(f - 2.0 * B)) < 1e-10);
  }
  CHECK_THROWS_AS(symmetric_gauge_box(0.01, 16, Boundary::MagneticPeriodic), InfeasibleModel);
  CHECK_THROWS_AS(symmetric_gauge_box(0.5, 2, Boundary::MagneticPeriodic), InvalidArgument);
  CHECK_THROWS_AS(symmetric_gauge_box(0.1, 0, Boundary::Open), InvalidArgument);
}

TEST_CASE("symmetric and landau gauge tori are isospectral") {
  const double B = 1.0 / 8;
  const int L = 16;
  const auto sym = eig(symmetric_gauge_box(B, L, Boundary::MagneticPeriodic).matrix);
  const auto lan = eig(landau_gauge_box(2.0 * B, L, Boundary::MagneticPeriodic).matrix);
  CHECK(max_diff(sym, lan) < 1e-10);
  for (double f : plaquette_fluxes(landau_gauge_box(0.25, 8, Boundary::MagneticPeriodic))) {
    CHECK(std::abs(wrap_unit(f - 0.25)) < 1e-12);
  }
}

TEST_CASE("eigen residual stays small up to dimension 484") {
  const BoxOperator op = symmetric_gauge_box(0.137, 22, Boundary::Open);
  const auto es = eigensystem(op.matrix);
  CHECK(eigen_residual(op.matrix, es) < 1e-12);
}

TEST_CASE("on-site disorder insertion") {
  const BoxOperator op = symmetric_gauge_box(0.1, 5, Boundary::MagneticPeriodic);
  std::vector<double> field(25, 0.0);
  field[7] = 0.5;
  const BoxOperator d = add_onsite_disorder(op, field);
  CHECK(d.matrix(7, 7).real() == doctest::Approx(op.matrix(7, 7).real() + 0.5));
  CHECK((d.matrix.matrix() - op.matrix.matrix()).norm() == doctest::Approx(0.5));
  CHECK_THROWS_AS(add_onsite_disorder(op, std::vector<double>(24, 0.0)), InvalidArgument);
}
