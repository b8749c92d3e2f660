#include "magspec/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magspec/parallel.hpp"
#include "magspec/random.hpp"

namespace magspec {

namespace {

constexpr std::uint64_t kCouplingStream = 0x5EED0001;

double draw(const DistributionSpec& d, std::uint64_t seed, std::uint64_t index) {
  if (d.strength == 0.0) return 0.0;
  if (d.kind == DisorderDistribution::Uniform) {
    return d.strength * (counter_uniform(seed, kCouplingStream, index) - 0.5);
  }
  return d.strength * counter_normal(seed, kCouplingStream, index);
}

void check_distribution(const DistributionSpec& d) {
  if (!(d.strength >= 0.0) || !std::isfinite(d.strength)) {
    throw InvalidArgument("disorder strength must be finite and >= 0, got " + std::to_string(d.strength));
  }
}

// Signed minimum-image separation on a ring of the given period.
double wrap(double d, double period) { return d - period * std::round(d / period); }

}  // namespace

double DisorderRealization::coupling(int n, int m) const {
  const int a = ((n % side) + side) % side;
  const int b = ((m % side) + side) % side;
  return couplings[static_cast<std::size_t>(a + side * b)];
}

DisorderRealization anderson_realization(int L, const DistributionSpec& distribution, std::uint64_t seed,
                                         const ProfileSpec& profile) {
  if (L < 1) throw InvalidArgument("disorder box side must be >= 1");
  check_distribution(distribution);
  if (profile.kind == BumpProfile::Gaussian && !(profile.width > 0.0)) {
    throw InvalidArgument("gaussian bump width must be > 0");
  }
  DisorderRealization r;
  r.seed = seed;
  r.side = L;
  r.distribution = distribution;
  r.profile = profile;
  r.couplings.resize(static_cast<std::size_t>(L) * L);
  for (std::size_t i = 0; i < r.couplings.size(); ++i) r.couplings[i] = draw(distribution, seed, i);
  return r;
}

std::vector<double> lattice_field(const DisorderRealization& r) {
  const int L = r.side;
  if (r.profile.kind == BumpProfile::OnSite) return r.couplings;

  const double s2 = 2.0 * r.profile.width * r.profile.width;
  const int reach = std::min(L / 2, static_cast<int>(std::ceil(8.0 * r.profile.width)));
  std::vector<double> out(r.couplings.size(), 0.0);
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      const double w = r.couplings[static_cast<std::size_t>(n + L * m)];
      if (w == 0.0) continue;
      // Each offset is visited once even when the window wraps around a small torus.
      for (int dm = -reach; dm <= reach; ++dm) {
        if (2 * reach == L && dm == reach) continue;
        for (int dn = -reach; dn <= reach; ++dn) {
          if (2 * reach == L && dn == reach) continue;
          const int x = ((n + dn) % L + L) % L;
          const int y = ((m + dm) % L + L) % L;
          out[static_cast<std::size_t>(x + L * y)] += w * std::exp(-(dn * dn + dm * dm) / s2);
        }
      }
    }
  }
  return out;
}

double scale_factor(double B, ScaleConvention convention) {
  if (!(B > 0.0)) throw InvalidArgument("scale factor needs B > 0");
  return convention == ScaleConvention::SlowVariation ? B : 1.0 / B;
}

ScaledPotential::ScaledPotential(DisorderRealization realization, double bump_width)
    : realization_(std::move(realization)), bump_width_(bump_width) {
  if (!(realization_.scale > 0.0)) throw InvalidArgument("scale factor lambda must be > 0");
  if (!(bump_width_ > 0.0)) throw InvalidArgument("bump width must be > 0");
  reach_ = static_cast<int>(std::ceil(8.0 * bump_width_));
}

double ScaledPotential::operator()(double x, double y) const {
  const int S = realization_.side;
  const double period = static_cast<double>(S);
  const double sx = std::fmod(realization_.scale * x, period);
  const double sy = std::fmod(realization_.scale * y, period);
  const double s2 = 2.0 * bump_width_ * bump_width_;
  const int cx = static_cast<int>(std::floor(sx));
  const int cy = static_cast<int>(std::floor(sy));
  // Sum over the periodic images within reach; on small grids every coarse
  // point enters once through its minimum image.
  const int rx = std::min(reach_, S);
  double v = 0.0;
  if (2 * rx + 1 >= S) {
    for (int m = 0; m < S; ++m) {
      const double dy = wrap(sy - m, period);
      for (int n = 0; n < S; ++n) {
        const double dx = wrap(sx - n, period);
        v += realization_.couplings[static_cast<std::size_t>(n + S * m)] * std::exp(-(dx * dx + dy * dy) / s2);
      }
    }
    return v;
  }
  for (int dm = -rx; dm <= rx + 1; ++dm) {
    const int m = cy + dm;
    const double dy = sy - m;
    for (int dn = -rx; dn <= rx + 1; ++dn) {
      const int n = cx + dn;
      const double dx = sx - n;
      v += realization_.coupling(n, m) * std::exp(-(dx * dx + dy * dy) / s2);
    }
  }
  return v;
}

double ScaledPotential::lipschitz_bound() const {
  // |grad of one bump| <= exp(-1/2) / sigma; count the bumps that can reach a point.
  double wmax = 0.0;
  for (double w : realization_.couplings) wmax = std::max(wmax, std::abs(w));
  const int S = realization_.side;
  const long window = std::min<long>(static_cast<long>(S) * S, static_cast<long>(2 * reach_ + 2) * (2 * reach_ + 2));
  return wmax * static_cast<double>(window) * std::exp(-0.5) / bump_width_;
}

FourierPotential ScaledPotential::periodized(const LandauBasisSpec& basis, int samples_per_cell, int cutoff) const {
  if (samples_per_cell < 1 || cutoff < 0) throw InvalidArgument("periodization needs samples >= 1 and cutoff >= 0");
  const int nx = basis.cells_x * samples_per_cell;
  const int ny = basis.cells_y * samples_per_cell;
  if (2 * cutoff >= std::min(nx, ny)) {
    throw InvalidArgument("Fourier cutoff " + std::to_string(cutoff) + " exceeds the Nyquist limit of the sampling grid");
  }
  const double lx = basis.cells_x * basis.cell_length;
  const double ly = basis.cells_y * basis.cell_length;

  Eigen::MatrixXd samples(nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) samples(i, j) = (*this)(lx * i / nx, ly * j / ny);
  }

  std::vector<PotentialHarmonic> harmonics;
  for (int v = -cutoff; v <= cutoff; ++v) {
    for (int u = -cutoff; u <= cutoff; ++u) {
      Complex c{0.0, 0.0};
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const double phase = -kTwoPi * (static_cast<double>(u) * i / nx + static_cast<double>(v) * j / ny);
          c += samples(i, j) * std::polar(1.0, phase);
        }
      }
      c /= static_cast<double>(nx) * ny;
      harmonics.push_back({static_cast<double>(u) / basis.cells_x, static_cast<double>(v) / basis.cells_y, c});
    }
  }
  // Enforce exact reality: average each coefficient with the conjugate of its partner.
  const int side = 2 * cutoff + 1;
  for (int v = -cutoff; v <= cutoff; ++v) {
    for (int u = -cutoff; u <= cutoff; ++u) {
      auto& a = harmonics[static_cast<std::size_t>((u + cutoff) + side * (v + cutoff))];
      auto& b = harmonics[static_cast<std::size_t>((-u + cutoff) + side * (-v + cutoff))];
      const Complex mean = 0.5 * (a.c + std::conj(b.c));
      a.c = mean;
      b.c = std::conj(mean);
    }
  }
  return FourierPotential(std::move(harmonics));
}

ScaledPotential scaled_realization(std::uint64_t seed, int coarse_side, double bump_width, double lambda,
                                   const DistributionSpec& distribution) {
  if (!(lambda > 0.0)) throw InvalidArgument("scale factor lambda must be > 0");
  DisorderRealization r = anderson_realization(coarse_side, distribution, seed, {BumpProfile::Gaussian, bump_width});
  r.scale = lambda;
  return ScaledPotential(std::move(r), bump_width);
}

EnsembleStats ensemble_dos(const ModelBuilder& model, int n, std::uint64_t base_seed, const DosParams& params) {
  if (n < 1) throw InvalidArgument("ensemble needs at least one realization");
  const auto per = parallel_map(static_cast<std::size_t>(n), [&](std::size_t i) {
    const std::vector<double> eig = model(base_seed + i);
    return dos(eig, params.width, params.bins, params.lo, params.hi, true);
  });

  EnsembleStats stats;
  stats.realizations = n;
  stats.mean = per.front();
  const std::size_t bins = stats.mean.bins();
  std::vector<double> sum(bins, 0.0);
  std::vector<double> sum_sq(bins, 0.0);
  for (const auto& h : per) {
    for (std::size_t b = 0; b < bins; ++b) {
      sum[b] += h.density[b];
      sum_sq[b] += h.density[b] * h.density[b];
    }
  }
  stats.std_error.assign(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    const double mean = sum[b] / n;
    stats.mean.density[b] = mean;
    if (n > 1) {
      double var = 0.0;
      for (const auto& h : per) var += (h.density[b] - mean) * (h.density[b] - mean);
      var /= static_cast<double>(n - 1);
      stats.std_error[b] = std::sqrt(var / n);
    }
  }
  return stats;
}

double gap_fill_fraction(const BandIntervals& clean, const EnsembleStats& disordered) {
  const auto gaps = clean.gaps();
  if (gaps.empty()) throw InvalidArgument("clean spectrum has no gap");
  const Histogram& h = disordered.mean;
  double total = 0.0;
  double inside = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double lo = h.edges[b];
    const double hi = h.edges[b + 1];
    total += h.density[b] * (hi - lo);
    for (const auto& g : gaps) {
      const double overlap = std::min(hi, g.hi) - std::max(lo, g.lo);
      if (overlap > 0.0) inside += h.density[b] * overlap;
    }
  }
  if (!(total > 0.0)) return 0.0;
  return std::clamp(inside / total, 0.0, 1.0);
}

}  // namespace magspec
