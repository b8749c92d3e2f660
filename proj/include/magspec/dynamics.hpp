#pragma once

// Time evolution of finite Hamiltonians and the propagation defect between a
// full Hamiltonian restricted to an isolated cluster and an effective model.

#include <span>
#include <vector>

#include "magspec/core.hpp"
#include "magspec/landau.hpp"
#include "magspec/spectral.hpp"

namespace magspec {

/// Unit-norm state in a declared basis.
class WavePacket {
 public:
  /// Throws InvalidArgument unless |norm - 1| < 1e-10.
  explicit WavePacket(CVector coefficients);
  /// Normalizes a nonzero vector.
  static WavePacket normalized(const CVector& v);

  [[nodiscard]] const CVector& coefficients() const { return c_; }
  [[nodiscard]] Eigen::Index dim() const { return c_.size(); }
  [[nodiscard]] double norm() const { return c_.norm(); }

 private:
  CVector c_;
};

/// Hermitian idempotent.
class Projector {
 public:
  /// Validates ||P^2 - P||, ||P - P^dagger|| < 1e-10 and integral trace.
  explicit Projector(CMatrix p);
  static Projector zero(Eigen::Index dim);
  /// Orthogonal projector onto the given orthonormal columns.
  static Projector onto(const CMatrix& orthonormal_columns, Eigen::Index dim);
  /// Coordinate projector onto basis vectors [first, first + count).
  static Projector coordinate(Eigen::Index dim, Eigen::Index first, Eigen::Index count);

  [[nodiscard]] const CMatrix& matrix() const { return p_; }
  [[nodiscard]] Eigen::Index dim() const { return p_.rows(); }
  [[nodiscard]] int rank() const { return rank_; }

 private:
  CMatrix p_;
  int rank_ = 0;
};

/// Unitary W with W P W^dagger = Q.
struct IntertwinerUnitary {
  CMatrix W;
  Projector source;
  Projector target;
};

/// exp(-i t H) by full eigendecomposition; the decomposition is reused across times.
class Propagator {
 public:
  explicit Propagator(const HermitianMatrix& h);
  [[nodiscard]] CVector apply(const CVector& v, double t) const;
  [[nodiscard]] Eigen::Index dim() const { return es_.values.size(); }

 private:
  EigenSystem es_;
};

WavePacket evolve(const HermitianMatrix& h, const WavePacket& psi, double t);

/// Sum of eigenprojectors with eigenvalue in [lo, hi]. Throws InvalidArgument
/// when an eigenvalue lies within 1e-9 of either window edge.
Projector spectral_projection(const HermitianMatrix& h, double lo, double hi);

/// Sz.-Nagy intertwiner W = (I - (Q-P)^2)^(-1/2) (QP + (I-Q)(I-P)).
/// Requires ||P - Q|| < 1; throws InvalidArgument otherwise.
IntertwinerUnitary nagy_intertwiner(const Projector& P, const Projector& Q);

/// d(t) = || (exp(-i t H_full) - W^dagger exp(-i t H_eff) W) Pi psi || with
/// Pi psi renormalized. W maps Ran Pi onto the reference space on which H_eff
/// acts; both Hamiltonians live on the same finite space.
double peierls_defect(const HermitianMatrix& h_full, const HermitianMatrix& h_eff, const Projector& pi,
                      const IntertwinerUnitary& w, const CVector& psi, double t);

/// Reusable form of peierls_defect for a whole time grid.
std::vector<double> peierls_defects(const HermitianMatrix& h_full, const HermitianMatrix& h_eff,
                                    const Projector& pi, const IntertwinerUnitary& w, const CVector& psi,
                                    std::span<const double> times);

/// Least-squares slope through the origin, sum t d / sum t^2.
double slope_through_origin(std::span<const double> t, std::span<const double> d);

struct DefectRow {
  double B = 0.0;
  int n_phi = 0;
  Eigen::Index dim = 0;
  std::vector<double> defects;
  double slope = 0.0;       // C(B)
  double max_ratio = 0.0;   // max over t > 0 of d(t) / t
  double cluster_gap = 0.0;
  bool separated = true;
};

struct DefectScaling {
  std::vector<double> times;
  std::vector<DefectRow> rows;
  /// Slopes strictly decreasing along the row order (the B list order).
  bool monotone = true;
};

/// Strong-field effective dynamics: Pi is the spectral projector of the full
/// continuum Hamiltonian onto its lowest n_phi eigenvalues, the reference
/// space is the lowest Landau level block and H_eff = b + P0 V P0 there. The
/// initial state is a seeded random vector, projected by Pi.
DefectScaling defect_scaling(std::span<const LandauBasisSpec> bases, const FourierPotential& potential,
                             std::span<const double> times, std::uint64_t seed, double min_gap = 1.0);

}  // namespace magspec
