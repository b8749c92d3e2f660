#pragma once

// Seeded random potentials: Anderson-type couplings on lattice sites, smooth
// scaled realizations w(lambda x, lambda y) built on a coarse random grid, and
// disorder-averaged densities of states.

#include <cstdint>
#include <functional>
#include <vector>

#include "magspec/landau.hpp"
#include "magspec/spectral.hpp"

namespace magspec {

enum class DisorderDistribution { Uniform, Gaussian };

/// Uniform on [-W/2, W/2] or Gaussian with standard deviation sigma; both mean zero.
struct DistributionSpec {
  DisorderDistribution kind = DisorderDistribution::Uniform;
  double strength = 0.0;  // W or sigma

  static DistributionSpec uniform(double W) { return {DisorderDistribution::Uniform, W}; }
  static DistributionSpec gaussian(double sigma) { return {DisorderDistribution::Gaussian, sigma}; }
};

enum class BumpProfile { OnSite, Gaussian };

/// Shape of the single-site bump: a delta on the site, or exp(-r^2 / 2 width^2).
struct ProfileSpec {
  BumpProfile kind = BumpProfile::OnSite;
  double width = 0.0;
};

/// Random couplings omega_gamma on a periodic side x side grid.
struct DisorderRealization {
  std::uint64_t seed = 0;
  int side = 0;
  std::vector<double> couplings;  // index n + side * m
  DistributionSpec distribution;
  ProfileSpec profile;
  double scale = 1.0;  // lambda of the scaled mode; 1 for lattice disorder

  [[nodiscard]] double coupling(int n, int m) const;
};

/// L^2 iid couplings; coupling i is a pure function of (seed, i).
DisorderRealization anderson_realization(int L, const DistributionSpec& distribution, std::uint64_t seed,
                                         const ProfileSpec& profile = {});

/// On-site field sum_gamma omega_gamma f(x - gamma) on the L x L torus
/// (minimum-image distances), ready for add_onsite_disorder.
std::vector<double> lattice_field(const DisorderRealization& realization);

/// Which way the B-dependent rescaling w(lambda x, lambda y) runs.
enum class ScaleConvention {
  SlowVariation,  // lambda = B: correlation length 1/B grows as B -> 0
  FastVariation,  // lambda = 1/B: the formula read literally
};

double scale_factor(double B, ScaleConvention convention);

/// V(x, y) = w(lambda x, lambda y), where w interpolates iid values on a
/// periodic coarse grid with Gaussian bumps of width sigma_b.
class ScaledPotential {
 public:
  ScaledPotential(DisorderRealization realization, double bump_width);

  double operator()(double x, double y) const;
  [[nodiscard]] double lambda() const { return realization_.scale; }
  [[nodiscard]] const DisorderRealization& realization() const { return realization_; }
  /// Upper bound on |grad w| (per unit of the coarse grid).
  [[nodiscard]] double lipschitz_bound() const;

  /// Samples V on a samples_x x samples_y grid over the torus of the basis and
  /// keeps the Fourier harmonics with |u| <= cutoff_x, |v| <= cutoff_y.
  [[nodiscard]] FourierPotential periodized(const LandauBasisSpec& basis, int samples_per_cell, int cutoff) const;

 private:
  DisorderRealization realization_;
  double bump_width_;
  int reach_;
};

/// Coarse grid of coarse_side^2 iid values rescaled by lambda.
ScaledPotential scaled_realization(std::uint64_t seed, int coarse_side, double bump_width, double lambda,
                                   const DistributionSpec& distribution = DistributionSpec::uniform(1.0));

struct DosParams {
  double width = 0.02;
  int bins = 400;
  double lo = -5.0;
  double hi = 5.0;
};

struct EnsembleStats {
  int realizations = 0;
  Histogram mean;
  std::vector<double> std_error;  // per bin
};

/// Eigenvalues of one realization as a function of its seed.
using ModelBuilder = std::function<std::vector<double>(std::uint64_t seed)>;

/// Averages per-realization DOS over seeds base_seed + i, i < n, with the
/// standard error of the mean per bin. Results are assembled by index.
EnsembleStats ensemble_dos(const ModelBuilder& model, int n, std::uint64_t base_seed, const DosParams& params);

/// Fraction of averaged DOS mass lying in the open gaps of the clean spectrum.
double gap_fill_fraction(const BandIntervals& clean, const EnsembleStats& disordered);

}  // namespace magspec
