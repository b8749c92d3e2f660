#include <doctest.h>

#include <cmath>

#include "magspec/random.hpp"
#include "magspec/spectral.hpp"

using namespace magspec;

namespace {

// Brute-force Hausdorff distance between interval unions on a fine point grid.
double sampled_hausdorff(const BandIntervals& a, const BandIntervals& b) {
  auto directed = [](const BandIntervals& x, const BandIntervals& y) {
    double worst = 0.0;
    for (const auto& iv : x.intervals) {
      const int n = 2000;
      for (int i = 0; i <= n; ++i) worst = std::max(worst, y.distance(iv.lo + (iv.hi - iv.lo) * i / n));
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

BandIntervals random_union(std::uint64_t seed) {
  std::vector<double> v;
  for (std::uint64_t i = 0; i < 6; ++i) v.push_back(10.0 * counter_uniform(seed, 0, i) - 5.0);
  std::sort(v.begin(), v.end());
  BandIntervals b;
  for (std::size_t i = 0; i < v.size(); i += 2) b.intervals.push_back({v[i], v[i + 1]});
  return b;
}

// Diophantine prediction: p t_r = r mod q, |t_r| <= q/2, band r gets t_r - t_{r-1}.
std::vector<int> diophantine(long p, long q) {
  std::vector<long> t(static_cast<std::size_t>(q) + 1, 0);
  for (long r = 1; r < q; ++r) {
    for (long s = -q / 2; s <= q / 2; ++s) {
      if (((p * s - r) % q + q) % q == 0) t[static_cast<std::size_t>(r)] = s;
    }
  }
  std::vector<int> c;
  for (long r = 1; r <= q; ++r) c.push_back(static_cast<int>(t[static_cast<std::size_t>(r)] - t[static_cast<std::size_t>(r - 1)]));
  return c;
}

}  // namespace

TEST_CASE("hausdorff distance is exact on interval unions") {
  const auto a = BandIntervals{{{0.0, 1.0}, {3.0, 4.0}}, 0.0};
  const auto b = BandIntervals::single(0.0, 4.0);
  // Midpoint of the gap (1, 3) is 1 away from a.
  CHECK(hausdorff(a, b) == doctest::Approx(1.0));
  CHECK(directed_hausdorff(a, b) == 0.0);
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(BandIntervals::single(-4, 4), BandIntervals::single(-4.001, 4)) == doctest::Approx(0.001));
  CHECK_THROWS_AS(hausdorff(BandIntervals{}, a), InvalidArgument);
}

TEST_CASE("hausdorff metric properties on random unions") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_union(3 * s);
    const auto b = random_union(3 * s + 1);
    const auto c = random_union(3 * s + 2);
    const double ab = hausdorff(a, b);
    CHECK(ab == doctest::Approx(hausdorff(b, a)));
    CHECK(ab >= 0.0);
    CHECK(hausdorff(a, c) <= ab + hausdorff(b, c) + 1e-12);
    CHECK(ab == doctest::Approx(sampled_hausdorff(a, b)).epsilon(1e-3));
  }
}

TEST_CASE("band intervals from samples") {
  auto s = SpectrumSample::from_values({3.0, 0.0, 0.1, 0.2, 2.9});
  CHECK(s.min() == 0.0);
  const auto b = band_intervals(s, 0.5);
  REQUIRE(b.size() == 2);
  CHECK(b.intervals[0].hi == 0.2);
  CHECK(b.intervals[1].lo == 2.9);
  CHECK(b.gaps().size() == 1);
  CHECK_THROWS_AS(SpectrumSample::from_values({1.0, std::nan("")}), NumericalError);
}

TEST_CASE("zero and half flux spectra as sets") {
  const auto zero = band_union(fiber_sweep(hofstadter_family(RationalFlux(0, 1)), 200, 200));
  CHECK(hausdorff(zero, BandIntervals::single(-4, 4)) < 1e-3);

  const Eigen::MatrixXd half = fiber_sweep(hofstadter_family(RationalFlux(1, 2)), 64, 64);
  const double r = 2.0 * std::sqrt(2.0);
  CHECK(hausdorff(band_union(half), BandIntervals::single(-r, r)) < 1e-4);
  CHECK(half.col(1).minCoeff() - half.col(0).maxCoeff() < 1e-3);
}

TEST_CASE("grid refinement never shrinks the sampled spectrum") {
  const auto family = hofstadter_family(RationalFlux(2, 7));
  const auto fine = band_union(fiber_sweep(family, 128, 128));
  double previous = INFINITY;
  for (int n : {8, 16, 32, 64}) {
    const auto coarse = band_union(fiber_sweep(family, n, n));
    const auto finer = band_union(fiber_sweep(family, 2 * n, 2 * n));
    // Nested grids: every coarse band range lies inside the finer one.
    CHECK(directed_hausdorff(coarse, finer) < 1e-12);
    const double d = hausdorff(coarse, fine);
    CHECK(d <= previous + 1e-12);
    previous = d;
  }
}

TEST_CASE("fiber sweep row layout") {
  const auto family = hofstadter_family(RationalFlux(1, 3));
  const Eigen::MatrixXd sweep = fiber_sweep(family, 4, 5);
  CHECK(sweep.rows() == 20);
  CHECK(sweep.cols() == 3);
  const auto e = eigenvalues_hermitian(family(kTwoPi * 2 / 4, kTwoPi * 3 / 5));
  for (int b = 0; b < 3; ++b) CHECK(sweep(2 * 5 + 3, b) == doctest::Approx(e[static_cast<std::size_t>(b)]));
  CHECK(spectrum_union(family, 4, 5).values.size() == 60);
}

TEST_CASE("density of states") {
  const std::vector<double> e = {0.0};
  const Histogram h = dos(e, 0.1, 200, -1.0, 1.0, false);
  CHECK(h.integral() == doctest::Approx(1.0).epsilon(1e-12));
  // Bin mass is the exact Gaussian integral over the bin.
  const double expected = 0.5 * (std::erf(h.edges[101] / (std::sqrt(2.0) * 0.1)) - std::erf(h.edges[100] / (std::sqrt(2.0) * 0.1)));
  CHECK(h.density[100] * h.bin_width() == doctest::Approx(expected).epsilon(1e-12));

  const std::vector<double> edge = {0.99};
  CHECK(dos(edge, 0.1, 100, -1.0, 1.0, true).integral() == doctest::Approx(1.0));
  CHECK(dos(edge, 0.1, 100, -1.0, 1.0, false).integral() < 0.6);
  CHECK_THROWS_AS(dos(e, 0.0, 10, -1, 1), InvalidArgument);
}

TEST_CASE("chern numbers at flux 1/3 are (1, -2, 1) and stable under refinement") {
  const auto family = hofstadter_family(RationalFlux(1, 3));
  const auto r30 = chern_numbers(family, 30);
  CHECK(r30.chern == std::vector<int>{1, -2, 1});
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r30.raw[i] - r30.chern[i]) < 0.01);
  const auto r60 = chern_numbers(family, 60);
  CHECK(r60.chern == r30.chern);
  CHECK(r30.chern == diophantine(1, 3));
}

TEST_CASE("chern numbers match the diophantine rule for odd denominators") {
  for (const auto& [p, q, n] : std::vector<std::tuple<long, long, int>>{{2, 5, 120}, {1, 5, 60}, {3, 7, 160}}) {
    const auto r = chern_numbers(hofstadter_family(RationalFlux(p, q)), n);
    CHECK(r.chern == diophantine(p, q));
    int sum = 0;
    for (int c : r.chern) sum += c;
    CHECK(sum == 0);
  }
}

TEST_CASE("touching bands raise a degeneracy error") {
  CHECK_THROWS_AS(chern_numbers(hofstadter_family(RationalFlux(1, 2)), 30), NumericalError);
  // A coarse grid cannot certify the small gaps at 2/5.
  CHECK_THROWS_AS(chern_numbers(hofstadter_family(RationalFlux(2, 5)), 30), NumericalError);
}
