#include "magspec/landau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "magspec/spectral.hpp"

namespace magspec {

namespace {

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

std::pair<int, int> squarest_factorization(int cells) {
  int fx = 1;
  for (int d = 1; static_cast<long>(d) * d <= cells; ++d) {
    if (cells % d == 0) fx = d;
  }
  return {fx, cells / fx};
}

// sqrt(small! / large!) without overflow for the level counts used here.
double factorial_ratio_sqrt(int small, int large) {
  return std::exp(0.5 * (std::lgamma(small + 1.0) - std::lgamma(large + 1.0)));
}

}  // namespace

FourierPotential::FourierPotential(std::vector<PotentialHarmonic> harmonics) : harmonics_(std::move(harmonics)) {}

FourierPotential FourierPotential::constant(double c) {
  return FourierPotential({PotentialHarmonic{0.0, 0.0, Complex(c, 0.0)}});
}

FourierPotential FourierPotential::cosine_lattice(double amplitude) {
  const Complex half(0.5 * amplitude, 0.0);
  return FourierPotential({{1.0, 0.0, half}, {-1.0, 0.0, half}, {0.0, 1.0, half}, {0.0, -1.0, half}});
}

bool FourierPotential::is_real(double tol) const {
  for (const auto& h : harmonics_) {
    Complex partner{0.0, 0.0};
    Complex self{0.0, 0.0};
    for (const auto& g : harmonics_) {
      if (std::abs(g.kx + h.kx) < 1e-12 && std::abs(g.ky + h.ky) < 1e-12) partner += g.c;
      if (std::abs(g.kx - h.kx) < 1e-12 && std::abs(g.ky - h.ky) < 1e-12) self += g.c;
    }
    if (std::abs(partner - std::conj(self)) > tol) return false;
  }
  return true;
}

double FourierPotential::evaluate(double x, double y, double cell_length) const {
  Complex v{0.0, 0.0};
  for (const auto& h : harmonics_) v += h.c * std::polar(1.0, kTwoPi * (h.kx * x + h.ky * y) / cell_length);
  return v.real();
}

double FourierPotential::amplitude_bound() const {
  double s = 0.0;
  for (const auto& h : harmonics_) s += std::abs(h.c);
  return s;
}

CMatrix LandauBasisSpec::translation_clock() const {
  CMatrix c = CMatrix::Zero(n_phi, n_phi);
  for (int j = 0; j < n_phi; ++j) c(j, j) = std::polar(1.0, kTwoPi * j / n_phi);
  return c;
}

CMatrix LandauBasisSpec::translation_shift() const {
  CMatrix s = CMatrix::Zero(n_phi, n_phi);
  for (int j = 0; j < n_phi; ++j) s((j + 1) % n_phi, j) = 1.0;
  return s;
}

FeasibleField nearest_feasible_field(double B_target, int cells, double cell_length) {
  if (!(B_target > 0.0)) throw InvalidArgument("field parameter B must be positive");
  if (cells < 1) throw InvalidArgument("torus must contain at least one cell");
  const double area = cells * cell_length * cell_length;
  const int n_phi = std::max(1, static_cast<int>(std::lround(B_target * area / kPi)));
  return {kPi * n_phi / area, n_phi};
}

LandauBasisSpec landau_torus_basis(double B, int n_phi, int n_ll, double cell_length) {
  if (!(B > 0.0) || !std::isfinite(B)) throw InvalidArgument("landau_torus_basis: B must be positive and finite");
  if (n_phi < 1) throw InvalidArgument("landau_torus_basis: n_phi must be >= 1");
  if (n_ll < 1) throw InvalidArgument("landau_torus_basis: n_ll must be >= 1");
  if (!(cell_length > 0.0)) throw InvalidArgument("landau_torus_basis: cell length must be positive");

  // 2B * cells * a^2 = 2pi n_phi.
  const double cells = kPi * n_phi / (B * cell_length * cell_length);
  if (!near_integer(cells) || std::lround(cells) < 1) {
    const long nearest_cells = std::max(1L, std::lround(cells));
    const double feasible = kPi * n_phi / (static_cast<double>(nearest_cells) * cell_length * cell_length);
    std::ostringstream os;
    os.precision(12);
    os << "flux quantization infeasible: n_phi = " << n_phi << " at B = " << B << " needs " << cells
       << " cells; nearest feasible B = " << feasible << " (" << nearest_cells << " cells)";
    throw InfeasibleModel(os.str());
  }
  const auto [cx, cy] = squarest_factorization(static_cast<int>(std::lround(cells)));
  return LandauBasisSpec{B, n_phi, n_ll, cx, cy, cell_length};
}

CMatrix level_factor(const LandauBasisSpec& basis, double kx, double ky) {
  const double b = basis.field();
  const double Kx = kTwoPi * kx / basis.cell_length;
  const double Ky = kTwoPi * ky / basis.cell_length;
  const Complex alpha = Complex(Ky, Kx) / std::sqrt(2.0 * b);
  const double x = std::norm(alpha);
  const double gauss = std::exp(-0.5 * x);

  const int levels = basis.n_ll;
  std::vector<Complex> alpha_pow(static_cast<std::size_t>(levels), 1.0);
  std::vector<Complex> minus_conj_pow(static_cast<std::size_t>(levels), 1.0);
  for (int i = 1; i < levels; ++i) {
    alpha_pow[static_cast<std::size_t>(i)] = alpha_pow[static_cast<std::size_t>(i - 1)] * alpha;
    minus_conj_pow[static_cast<std::size_t>(i)] = minus_conj_pow[static_cast<std::size_t>(i - 1)] * (-std::conj(alpha));
  }

  CMatrix g(levels, levels);
  for (int n = 0; n < levels; ++n) {
    for (int m = 0; m < levels; ++m) {
      if (n >= m) {
        const auto d = static_cast<unsigned>(n - m);
        g(n, m) = factorial_ratio_sqrt(m, n) * alpha_pow[d] * gauss *
                  std::assoc_laguerre(static_cast<unsigned>(m), d, x);
      } else {
        const auto d = static_cast<unsigned>(m - n);
        g(n, m) = factorial_ratio_sqrt(n, m) * minus_conj_pow[d] * gauss *
                  std::assoc_laguerre(static_cast<unsigned>(n), d, x);
      }
    }
  }
  return g;
}

CMatrix guiding_center_translation(const LandauBasisSpec& basis, long u, long v) {
  const long N = basis.n_phi;
  CMatrix tau = CMatrix::Zero(N, N);
  const long v_mod = ((v % N) + N) % N;
  // Reduce the integer phase numerators mod 2N before converting to angles.
  const long uv = ((u % (2 * N)) * (v % (2 * N))) % (2 * N);
  const Complex weyl = std::polar(1.0, -kPi * static_cast<double>(uv) / static_cast<double>(N));
  for (long j = 0; j < N; ++j) {
    const long uj = ((u % N) * j) % N;
    tau((j + v_mod) % N, j) = weyl * std::polar(1.0, -kTwoPi * static_cast<double>(uj) / static_cast<double>(N));
  }
  return tau;
}

std::pair<long, long> torus_harmonic(const LandauBasisSpec& basis, double kx, double ky) {
  const double u = kx * basis.cells_x;
  const double v = ky * basis.cells_y;
  if (!near_integer(u) || !near_integer(v)) {
    std::ostringstream os;
    os << "plane wave K = 2pi(" << kx << ", " << ky << ")/a is not periodic on the " << basis.cells_x << "x"
       << basis.cells_y << " torus";
    throw InvalidArgument(os.str());
  }
  return {std::lround(u), std::lround(v)};
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<PotentialHarmonic> sorted_harmonics(const FourierPotential& potential) {
  auto hs = potential.harmonics();
  std::sort(hs.begin(), hs.end(), [](const PotentialHarmonic& a, const PotentialHarmonic& b) {
    return a.kx != b.kx ? a.kx < b.kx : a.ky < b.ky;
  });
  return hs;
}

}  // namespace

CMatrix plane_wave_element(const LandauBasisSpec& basis, double kx, double ky) {
  const auto [u, v] = torus_harmonic(basis, kx, ky);
  return kron(level_factor(basis, kx, ky), guiding_center_translation(basis, u, v));
}

ContinuumHamiltonian continuum_hamiltonian(const LandauBasisSpec& basis, const FourierPotential& potential) {
  if (!potential.is_real()) throw InvalidArgument("continuum_hamiltonian: potential is not real");
  const Eigen::Index dim = basis.dim();
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int n = 0; n < basis.n_ll; ++n) {
    for (int j = 0; j < basis.n_phi; ++j) {
      const Eigen::Index i = static_cast<Eigen::Index>(n) * basis.n_phi + j;
      h(i, i) = basis.level_energy(n);
    }
  }
  for (const auto& harmonic : sorted_harmonics(potential)) {
    h += harmonic.c * plane_wave_element(basis, harmonic.kx, harmonic.ky);
  }
  return ContinuumHamiltonian{basis, potential, HermitianMatrix(std::move(h), 1e-10)};
}

HermitianMatrix lll_effective(const LandauBasisSpec& basis, const FourierPotential& potential) {
  if (!potential.is_real()) throw InvalidArgument("lll_effective: potential is not real");
  const double b = basis.field();
  CMatrix h = CMatrix::Zero(basis.n_phi, basis.n_phi);
  for (const auto& harmonic : sorted_harmonics(potential)) {
    const auto [u, v] = torus_harmonic(basis, harmonic.kx, harmonic.ky);
    const double K2 = std::pow(kTwoPi / basis.cell_length, 2) * (harmonic.kx * harmonic.kx + harmonic.ky * harmonic.ky);
    h += harmonic.c * std::exp(-K2 / (4.0 * b)) * guiding_center_translation(basis, u, v);
  }
  return HermitianMatrix(std::move(h), 1e-10);
}

std::vector<StrongFieldRow> strong_field_report(std::span<const LandauBasisSpec> bases,
                                                const FourierPotential& potential, double min_gap) {
  std::vector<StrongFieldRow> rows;
  rows.reserve(bases.size());
  for (const auto& basis : bases) {
    StrongFieldRow row;
    row.B_requested = basis.B;
    row.B = basis.B;
    row.n_phi = basis.n_phi;
    row.dim = basis.dim();

    const auto full = continuum_hamiltonian(basis, potential);
    const auto ev = eigenvalues_hermitian(full.matrix);
    const auto n = static_cast<std::size_t>(basis.n_phi);
    std::vector<double> cluster(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(n));
    for (double& e : cluster) e -= basis.field();
    row.cluster_width = cluster.back() - cluster.front();
    row.cluster_gap = ev.size() > n ? ev[n] - ev[n - 1] : std::numeric_limits<double>::infinity();
    row.separated = row.cluster_gap >= min_gap;

    const auto lll = eigenvalues_hermitian(lll_effective(basis, potential));
    // Tiny merge tolerance: both spectra are compared as finite point sets.
    row.hausdorff = hausdorff(band_intervals(SpectrumSample::from_values(cluster), 1e-12),
                              band_intervals(SpectrumSample::from_values(lll), 1e-12));

    if (basis.n_ll > 1) {
      const CMatrix coupling = full.matrix.matrix().block(basis.n_phi, 0, basis.n_phi, basis.n_phi);
      row.next_level_coupling = operator_norm(coupling);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace magspec
