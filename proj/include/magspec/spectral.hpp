#pragma once

// Eigen-decomposition, grid sweeps, spectra as interval unions, Hausdorff
// distances, densities of states and lattice Chern numbers.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "magspec/core.hpp"
#include "magspec/lattice.hpp"

namespace magspec {

/// Sorted (ascending) finite eigenvalues with multiplicity, plus provenance.
struct SpectrumSample {
  std::vector<double> values;
  std::optional<RationalFlux> flux;
  int grid1 = 0;
  int grid2 = 0;
  std::string gauge;

  /// Sorts the values and rejects non-finite entries.
  static SpectrumSample from_values(std::vector<double> values);

  [[nodiscard]] bool empty() const { return values.empty(); }
  [[nodiscard]] double min() const { return values.front(); }
  [[nodiscard]] double max() const { return values.back(); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Ordered disjoint closed intervals approximating a spectrum as a set.
struct BandIntervals {
  std::vector<Interval> intervals;
  double gap_tol = 0.0;

  static BandIntervals single(double lo, double hi);

  [[nodiscard]] bool empty() const { return intervals.empty(); }
  [[nodiscard]] std::size_t size() const { return intervals.size(); }
  /// Distance from x to the nearest point of the set.
  [[nodiscard]] double distance(double x) const;
  /// Open gaps between consecutive intervals.
  [[nodiscard]] std::vector<Interval> gaps() const;
};

/// Uniform-bin density; densities are per unit energy.
struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  bool normalized = false;

  [[nodiscard]] std::size_t bins() const { return density.size(); }
  [[nodiscard]] double bin_width() const { return edges.size() > 1 ? edges[1] - edges[0] : 0.0; }
  [[nodiscard]] double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  [[nodiscard]] double integral() const;
};

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

/// All eigenvalues, ascending.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m);
/// Validates Hermiticity (relative to the largest entry) before solving.
std::vector<double> eigenvalues_hermitian(const CMatrix& m, double tol = 1e-10);
EigenSystem eigensystem(const HermitianMatrix& m);
/// max_i ||M v_i - lambda_i v_i|| / max(||M||, 1).
double eigen_residual(const HermitianMatrix& m, const EigenSystem& es);
/// Operator norm of a Hermitian matrix: largest |eigenvalue|.
double hermitian_norm(const CMatrix& m);

/// Eigenvalues per grid point, row-major over (i1, i2) with k = 2pi(i1/n1, i2/n2);
/// row r holds the dim eigenvalues of that fiber in ascending order.
Eigen::MatrixXd fiber_sweep(const BlochFiberFamily& family, int n1, int n2);

/// Union of fiber spectra over the uniform n1 x n2 grid on [0, 2pi)^2.
SpectrumSample spectrum_union(const BlochFiberFamily& family, int n1, int n2);

/// Ten times the median spacing between consecutive distinct eigenvalues.
double default_gap_tol(const SpectrumSample& sample);

/// Merges consecutive eigenvalues closer than gap_tol into maximal intervals.
BandIntervals band_intervals(const SpectrumSample& sample, double gap_tol);
BandIntervals band_intervals(const SpectrumSample& sample);

/// Spectrum of a fiber family as a set: band b covers [min_k E_b, max_k E_b]
/// (a continuous image of the torus), and bands closer than gap_tol merge.
/// `sweep` is the output of fiber_sweep.
inline constexpr double kBandMergeTol = 1e-9;
BandIntervals band_union(const Eigen::MatrixXd& sweep, double gap_tol = kBandMergeTol);

/// Exact symmetric Hausdorff distance between two interval unions.
double hausdorff(const BandIntervals& a, const BandIntervals& b);
/// sup over a of the distance to b.
double directed_hausdorff(const BandIntervals& a, const BandIntervals& b);

/// Gaussian-smoothed eigenvalue density on [lo, hi] with exact per-bin kernel
/// mass. When normalize is set the result integrates to 1 over the range.
Histogram dos(std::span<const double> eigenvalues, double width, int bins, double lo, double hi,
              bool normalize = true);
/// Range chosen as [min - 8 width, max + 8 width].
Histogram dos(const SpectrumSample& sample, double width, int bins);

struct ChernReport {
  std::vector<int> chern;
  std::vector<double> raw;
  /// Smallest direct gap between adjacent bands on the grid.
  double min_gap = 0.0;
};

/// Lattice field-strength (link-variable) Chern numbers of every band over the
/// magnetic zone of the family, sampled on an n x n grid.
///
/// Throws NumericalError when adjacent bands may touch inside a grid cell
/// (the corner gap does not exceed the Weyl bound on its variation) or when a
/// raw band sum is further than 0.01 from an integer.
ChernReport chern_numbers(const BlochFiberFamily& family, int n);

}  // namespace magspec
