#pragma once

// Continuum Landau Hamiltonian with a periodic potential, represented on a
// magnetic torus in a truncated Landau-level basis.
//
// Field convention: H = (-i d_x - B y)^2 + (-i d_y + B x)^2 + V has field
// strength b = 2B, so the Landau levels sit at b (2n + 1) = 2B (2n + 1).
// Every formula below is written in terms of b.
//
// The torus is cells_x x cells_y cells of side cell_length and carries
// n_phi = b * area / 2pi flux quanta. Basis index = level * n_phi + j, where j
// labels the Landau-gauge orbitals of one level. Plane waves factor as
// (cyclotron Laguerre-Gaussian factor) (x) (guiding-centre translation).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "magspec/core.hpp"

namespace magspec {

/// One harmonic c exp(i K.r) with K = 2pi (kx, ky) / cell_length.
struct PotentialHarmonic {
  double kx = 0.0;
  double ky = 0.0;
  Complex c{0.0, 0.0};
};

/// Finite real Fourier series V(r) = sum c_K exp(i K.r).
class FourierPotential {
 public:
  FourierPotential() = default;
  explicit FourierPotential(std::vector<PotentialHarmonic> harmonics);

  static FourierPotential zero() { return {}; }
  static FourierPotential constant(double c);
  /// amplitude * (cos(2pi x / a) + cos(2pi y / a)), i.e. 2cos + 2cos at amplitude 2.
  static FourierPotential cosine_lattice(double amplitude = 2.0);

  /// c_{-K} = conj(c_K) for every harmonic.
  [[nodiscard]] bool is_real(double tol = 1e-12) const;
  [[nodiscard]] double evaluate(double x, double y, double cell_length = 1.0) const;
  /// Sum of |c_K|, an upper bound on sup |V|.
  [[nodiscard]] double amplitude_bound() const;
  [[nodiscard]] const std::vector<PotentialHarmonic>& harmonics() const { return harmonics_; }

 private:
  std::vector<PotentialHarmonic> harmonics_;
};

struct LandauBasisSpec {
  double B = 0.0;            // parameter of the Hamiltonian; field strength is 2B
  int n_phi = 1;             // flux quanta through the torus
  int n_ll = 1;              // Landau levels kept
  int cells_x = 1;
  int cells_y = 1;
  double cell_length = 1.0;

  [[nodiscard]] double field() const { return 2.0 * B; }
  [[nodiscard]] int cells() const { return cells_x * cells_y; }
  [[nodiscard]] Eigen::Index dim() const { return static_cast<Eigen::Index>(n_ll) * n_phi; }
  [[nodiscard]] double level_energy(int n) const { return field() * (2.0 * n + 1.0); }
  /// Magnetic translations of one level: clock diag(exp(i 2pi j / n_phi)) and
  /// shift |j> -> |j+1>, with clock * shift = exp(i 2pi / n_phi) shift * clock.
  [[nodiscard]] CMatrix translation_clock() const;
  [[nodiscard]] CMatrix translation_shift() const;
};

struct FeasibleField {
  double B = 0.0;
  int n_phi = 0;
};

/// Feasible field closest to B_target on a torus with the given number of
/// cells: n_phi = max(1, round(B area / pi)), B = pi n_phi / area.
FeasibleField nearest_feasible_field(double B_target, int cells, double cell_length = 1.0);

/// Validates flux quantization 2B area = 2pi n_phi by choosing the number of
/// cells pi n_phi / (B a^2); throws InfeasibleModel (reporting the nearest
/// feasible B) when that is not an integer. The torus is the most nearly
/// square cells_x x cells_y factorization of the cell count.
LandauBasisSpec landau_torus_basis(double B, int n_phi, int n_ll, double cell_length = 1.0);

/// n_ll x n_ll matrix <n| exp(i K.eta) |n'> of the cyclotron coordinate,
/// a displaced-oscillator element with alpha = (Ky + i Kx) / sqrt(2b):
/// sqrt(n'!/n!) alpha^(n-n') exp(-|alpha|^2/2) L_{n'}^{(n-n')}(|alpha|^2) for n >= n'.
CMatrix level_factor(const LandauBasisSpec& basis, double kx, double ky);

/// n_phi x n_phi guiding-centre translation for torus harmonic (u, v), i.e.
/// K = 2pi (u / cells_x, v / cells_y) / a:
/// tau[j+v mod n_phi, j] = exp(-i 2pi u j / n_phi) exp(-i pi u v / n_phi).
CMatrix guiding_center_translation(const LandauBasisSpec& basis, long u, long v);

/// Torus harmonic indices (u, v) of K; throws InvalidArgument unless K is
/// compatible with the torus periodicity.
std::pair<long, long> torus_harmonic(const LandauBasisSpec& basis, double kx, double ky);

/// Matrix of exp(i K.r) in the truncated basis: level_factor (x) tau.
CMatrix plane_wave_element(const LandauBasisSpec& basis, double kx, double ky);

struct ContinuumHamiltonian {
  LandauBasisSpec basis;
  FourierPotential potential;
  HermitianMatrix matrix;
};

/// Kinetic diagonal b(2n+1) plus sum_K c_K plane_wave_element(K), summed in
/// sorted-K order.
ContinuumHamiltonian continuum_hamiltonian(const LandauBasisSpec& basis, const FourierPotential& potential);

/// Lowest-Landau-level projection P0 V P0 = sum_K c_K exp(-|K|^2 / 4b) tau(K).
HermitianMatrix lll_effective(const LandauBasisSpec& basis, const FourierPotential& potential);

struct StrongFieldRow {
  double B_requested = 0.0;
  double B = 0.0;
  int n_phi = 0;
  Eigen::Index dim = 0;
  double hausdorff = 0.0;       // (lowest cluster - b) vs lll_effective spectrum
  double cluster_width = 0.0;
  double cluster_gap = 0.0;     // gap above the lowest n_phi eigenvalues
  double next_level_coupling = 0.0;  // ||P1 V P0||, truncation proxy
  bool separated = true;
};

/// One row per basis. A cluster whose gap is below min_gap is flagged
/// (separated = false) rather than raising.
std::vector<StrongFieldRow> strong_field_report(std::span<const LandauBasisSpec> bases,
                                                const FourierPotential& potential, double min_gap = 1.0);

}  // namespace magspec
