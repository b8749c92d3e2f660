#pragma once

// Discrete magnetic operators: Hofstadter fibers in the Landau gauge, the
// symmetric-gauge box operator, Harper fibers, Peierls quantization of band
// dispersions and on-site disorder insertion.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "magspec/core.hpp"
#include "magspec/flux.hpp"

namespace magspec {

/// Map from a Brillouin-zone point to a finite Hermitian matrix.
///
/// The evaluator is 2pi-periodic in both momenta. The magnetic zone is the
/// rectangle [0, zone_extent1) x [0, zone_extent2); translating k by a zone
/// extent conjugates the fiber, H(k + extent_i e_i) = G_i H(k) G_i^dagger,
/// which is what the Chern computation needs to close the zone.
struct BlochFiberFamily {
  RationalFlux flux;
  Eigen::Index dim = 1;
  std::string gauge;
  std::function<HermitianMatrix(double, double)> evaluator;
  double zone_extent1 = kTwoPi;
  double zone_extent2 = kTwoPi;
  CMatrix zone_gauge1;
  CMatrix zone_gauge2;

  HermitianMatrix operator()(double k1, double k2) const { return evaluator(k1, k2); }
};

/// One term c * exp(i(n k1 + m k2)) of a band dispersion.
struct DispersionHarmonic {
  int n = 0;
  int m = 0;
  Complex c{0.0, 0.0};
};

/// E(k) = sum c_nm exp(i(n k1 + m k2)).
class FourierDispersion {
 public:
  FourierDispersion() = default;
  explicit FourierDispersion(std::vector<DispersionHarmonic> harmonics);

  /// 2 cos k1 + 2 cos k2.
  static FourierDispersion nearest_neighbour();
  static FourierDispersion constant(double c);
  /// Adds amplitude * cos(n k1 + m k2) as two conjugate harmonics.
  FourierDispersion& add_cosine(int n, int m, double amplitude);

  /// True when every (n, m, c) has a partner (-n, -m, conj(c)).
  [[nodiscard]] bool is_real(double tol = 1e-12) const;
  [[nodiscard]] Complex evaluate(double k1, double k2) const;
  [[nodiscard]] const std::vector<DispersionHarmonic>& harmonics() const { return harmonics_; }

 private:
  std::vector<DispersionHarmonic> harmonics_;
};

enum class Boundary { Open, MagneticPeriodic };

/// Finite L x L truncation of a lattice operator; site (n, m) has index n + L m.
struct BoxOperator {
  int side = 0;
  Boundary boundary = Boundary::Open;
  HermitianMatrix matrix;

  [[nodiscard]] Eigen::Index site(int n, int m) const { return n + static_cast<Eigen::Index>(side) * m; }
};

/// q x q clock diag(exp(i 2pi p j / q)).
CMatrix clock_matrix(const RationalFlux& flux);
/// q x q cyclic shift |j> -> |j + 1 mod q>.
CMatrix shift_matrix(Eigen::Index q);

/// Landau-gauge magnetic Bloch fiber at rational flux p/q.
///
/// Diagonal 2 cos(k2 + 2pi (p/q) j); each nearest-neighbour bond j -> j+1
/// (including the cyclic wrap) carries exp(i k1). With the phase distributed
/// over all q bonds the spectrum is periodic in k1 with period 2pi/q.
HermitianMatrix hofstadter_fiber(const RationalFlux& flux, double k1, double k2);
BlochFiberFamily hofstadter_family(const RationalFlux& flux);

/// Bloch-reduced Harper / almost-Mathieu operator at critical coupling:
/// diagonal 2 cos(2pi(theta + j p/q)), bonds exp(i k) with cyclic wrap.
HermitianMatrix harper_fiber(const RationalFlux& flux, double theta, double k);

/// Leading-order Peierls substitution of a band dispersion.
///
/// Harmonic (n, m) becomes exp(i pi n m p/q) U^n V^m exp(i(n k1 + m k2)) with
/// U the cyclic shift and V the clock, V U = exp(i 2pi p/q) U V. The phase is
/// the Weyl-symmetric ordering, so real dispersions give Hermitian fibers and
/// 2 cos k1 + 2 cos k2 reproduces hofstadter_fiber exactly.
BlochFiberFamily peierls_quantize(const FourierDispersion& dispersion, const RationalFlux& flux);

/// Hofstadter operator on an L x L box in the symmetric gauge:
///   (H xi)_{n,m} = e^m xi_{n+1,m} + conj(e^m) xi_{n-1,m}
///                + conj(e^n) xi_{n,m+1} + e^n xi_{n,m-1},  e^m = exp(i 2pi m B).
///
/// The flux per plaquette is 2B. MagneticPeriodic closes the box into a torus
/// (requires L >= 3 and 2 B L^2 integral); the wrap bonds are gauge-fixed so
/// every plaquette, including the ones crossing the seam, carries 2B.
BoxOperator symmetric_gauge_box(double B, int L, Boundary boundary);

/// Landau-gauge box with flux alpha per plaquette: x bonds real, y bond from
/// (n, m) to (n, m+1) carries exp(i 2pi alpha n). Reference for gauge checks.
BoxOperator landau_gauge_box(double alpha, int L, Boundary boundary);

/// Flux (in quanta, mod 1) through the counterclockwise unit plaquette whose
/// lower-left corner is (n, m). The hop a -> b contributes arg H[b][a].
double plaquette_flux(const BoxOperator& op, int n = 0, int m = 0);

/// Fluxes of all plaquettes: (L-1)^2 interior ones for an open box, L^2 for a torus.
std::vector<double> plaquette_fluxes(const BoxOperator& op);

/// Adds a real on-site field (length L^2) to the diagonal.
BoxOperator add_onsite_disorder(const BoxOperator& op, std::span<const double> field);

}  // namespace magspec
