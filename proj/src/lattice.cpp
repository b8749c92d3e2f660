#include "magspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace magspec {

namespace {

double wrap_angle(double phi) { return std::remainder(phi, kTwoPi); }

double fraction_mod_one(double x) {
  double r = x - std::floor(x);
  if (r > 1.0 - 1e-12) r = 0.0;
  return r;
}

using BondPhase = std::function<double(int, int)>;

// Assembles an L x L box from the phases of the hops (n,m)->(n+1,m) and
// (n,m)->(n,m+1). For a torus the seam bonds are chosen so that the right
// column and top row plaquettes carry the bulk flux; the corner plaquette then
// closes by itself because the total flux is integral.
BoxOperator assemble_box(int L, Boundary boundary, const BondPhase& phase_x, const BondPhase& phase_y,
                         double flux_per_plaquette) {
  if (L < 2) throw InvalidArgument("box operator: side length must be >= 2");
  if (boundary == Boundary::MagneticPeriodic) {
    if (L < 3) throw InvalidArgument("magnetic-periodic box: side length must be >= 3");
    const double total = flux_per_plaquette * static_cast<double>(L) * L;
    if (std::abs(total - std::round(total)) > 1e-9 * std::max(1.0, std::abs(total))) {
      std::ostringstream os;
      os << "inconsistent torus gauge: total flux " << total << " through the " << L << "x" << L
         << " torus is not an integer number of flux quanta";
      throw InfeasibleModel(os.str());
    }
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(L) * L;
  CMatrix h = CMatrix::Zero(dim, dim);
  auto idx = [L](int n, int m) { return static_cast<Eigen::Index>(n) + static_cast<Eigen::Index>(L) * m; };
  auto hop = [&h](Eigen::Index from, Eigen::Index to, double phase) {
    const Complex t = std::polar(1.0, wrap_angle(phase));
    h(to, from) += t;
    h(from, to) += std::conj(t);
  };

  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      if (n + 1 < L) hop(idx(n, m), idx(n + 1, m), phase_x(n, m));
      if (m + 1 < L) hop(idx(n, m), idx(n, m + 1), phase_y(n, m));
    }
  }

  if (boundary == Boundary::MagneticPeriodic) {
    const double plaquette_phase = kTwoPi * flux_per_plaquette;
    double seam_x = 0.0;  // hop (L-1, m) -> (0, m)
    for (int m = 0; m < L; ++m) {
      hop(idx(L - 1, m), idx(0, m), seam_x);
      seam_x = wrap_angle(seam_x + phase_y(0, m) - phase_y(L - 1, m) - plaquette_phase);
    }
    double seam_y = 0.0;  // hop (n, L-1) -> (n, 0)
    for (int n = 0; n < L; ++n) {
      hop(idx(n, L - 1), idx(n, 0), seam_y);
      seam_y = wrap_angle(seam_y + plaquette_phase - phase_x(n, L - 1) + phase_x(n, 0));
    }
  }

  return BoxOperator{L, boundary, HermitianMatrix(std::move(h))};
}

}  // namespace

FourierDispersion::FourierDispersion(std::vector<DispersionHarmonic> harmonics)
    : harmonics_(std::move(harmonics)) {}

FourierDispersion FourierDispersion::nearest_neighbour() {
  FourierDispersion d;
  d.add_cosine(1, 0, 2.0).add_cosine(0, 1, 2.0);
  return d;
}

FourierDispersion FourierDispersion::constant(double c) {
  return FourierDispersion({DispersionHarmonic{0, 0, Complex(c, 0.0)}});
}

FourierDispersion& FourierDispersion::add_cosine(int n, int m, double amplitude) {
  if (n == 0 && m == 0) {
    harmonics_.push_back({0, 0, Complex(amplitude, 0.0)});
  } else {
    harmonics_.push_back({n, m, Complex(0.5 * amplitude, 0.0)});
    harmonics_.push_back({-n, -m, Complex(0.5 * amplitude, 0.0)});
  }
  return *this;
}

bool FourierDispersion::is_real(double tol) const {
  // Sum coefficients per (n, m) first so split harmonics compare correctly.
  std::vector<DispersionHarmonic> merged;
  for (const auto& h : harmonics_) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const DispersionHarmonic& g) { return g.n == h.n && g.m == h.m; });
    if (it == merged.end()) {
      merged.push_back(h);
    } else {
      it->c += h.c;
    }
  }
  for (const auto& h : merged) {
    Complex partner{0.0, 0.0};
    for (const auto& g : merged) {
      if (g.n == -h.n && g.m == -h.m) partner = g.c;
    }
    if (std::abs(partner - std::conj(h.c)) > tol) return false;
  }
  return true;
}

Complex FourierDispersion::evaluate(double k1, double k2) const {
  Complex e{0.0, 0.0};
  for (const auto& h : harmonics_) e += h.c * std::polar(1.0, h.n * k1 + h.m * k2);
  return e;
}

CMatrix clock_matrix(const RationalFlux& flux) {
  const auto q = static_cast<Eigen::Index>(flux.q());
  CMatrix c = CMatrix::Zero(q, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    // p j mod q keeps the argument small for large p.
    const auto pj = (flux.p() % flux.q()) * j % flux.q();
    c(j, j) = std::polar(1.0, kTwoPi * static_cast<double>(pj) / static_cast<double>(q));
  }
  return c;
}

CMatrix shift_matrix(Eigen::Index q) {
  CMatrix s = CMatrix::Zero(q, q);
  for (Eigen::Index j = 0; j < q; ++j) s((j + 1) % q, j) = 1.0;
  return s;
}

HermitianMatrix hofstadter_fiber(const RationalFlux& flux, double k1, double k2) {
  if (!std::isfinite(k1) || !std::isfinite(k2)) throw InvalidArgument("hofstadter_fiber: non-finite momentum");
  const auto q = static_cast<Eigen::Index>(flux.q());
  const RationalFlux a = flux.mod_one();
  CMatrix h = CMatrix::Zero(q, q);
  const Complex bond = std::polar(1.0, k1);
  for (Eigen::Index j = 0; j < q; ++j) {
    const double angle = k2 + kTwoPi * static_cast<double>(a.p() * j % a.q()) / static_cast<double>(a.q());
    h(j, j) += 2.0 * std::cos(angle);
    h((j + 1) % q, j) += bond;
    h(j, (j + 1) % q) += std::conj(bond);
  }
  return HermitianMatrix(std::move(h));
}

namespace {

CMatrix distributed_bloch_gauge(Eigen::Index q) {
  CMatrix g = CMatrix::Zero(q, q);
  for (Eigen::Index j = 0; j < q; ++j) g(j, j) = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(q));
  return g;
}

}  // namespace

BlochFiberFamily hofstadter_family(const RationalFlux& flux) {
  const auto q = static_cast<Eigen::Index>(flux.q());
  BlochFiberFamily family;
  family.flux = flux;
  family.dim = q;
  family.gauge = "landau";
  family.evaluator = [flux](double k1, double k2) { return hofstadter_fiber(flux, k1, k2); };
  family.zone_extent1 = kTwoPi / static_cast<double>(q);
  family.zone_extent2 = kTwoPi;
  family.zone_gauge1 = distributed_bloch_gauge(q);
  family.zone_gauge2 = CMatrix::Identity(q, q);
  return family;
}

HermitianMatrix harper_fiber(const RationalFlux& flux, double theta, double k) {
  if (!std::isfinite(theta) || !std::isfinite(k)) throw InvalidArgument("harper_fiber: non-finite parameter");
  const auto q = static_cast<Eigen::Index>(flux.q());
  const RationalFlux a = flux.mod_one();
  CMatrix h = CMatrix::Zero(q, q);
  const Complex bond = std::polar(1.0, k);
  for (Eigen::Index j = 0; j < q; ++j) {
    const double frac = static_cast<double>(a.p() * j % a.q()) / static_cast<double>(a.q());
    h(j, j) += 2.0 * std::cos(kTwoPi * (theta + frac));
    h((j + 1) % q, j) += bond;
    h(j, (j + 1) % q) += std::conj(bond);
  }
  return HermitianMatrix(std::move(h));
}

BlochFiberFamily peierls_quantize(const FourierDispersion& dispersion, const RationalFlux& flux) {
  if (!dispersion.is_real()) {
    throw InvalidArgument("peierls_quantize: dispersion is not real (missing conjugate harmonics)");
  }
  const auto q = static_cast<Eigen::Index>(flux.q());
  const CMatrix shift = shift_matrix(q);
  const CMatrix clock = clock_matrix(flux);

  auto power = [q](const CMatrix& base, int e) {
    CMatrix result = CMatrix::Identity(q, q);
    const CMatrix b = e >= 0 ? base : CMatrix(base.adjoint());
    for (int i = 0; i < std::abs(e); ++i) result = result * b;
    return result;
  };

  // Ordered operator for every harmonic, built once; only Bloch phases vary with k.
  struct Term {
    int n, m;
    CMatrix op;
  };
  std::vector<Term> terms;
  const double ratio = static_cast<double>(flux.p()) / static_cast<double>(flux.q());
  for (const auto& h : dispersion.harmonics()) {
    const Complex weyl = std::polar(1.0, kPi * static_cast<double>(h.n) * h.m * ratio);
    terms.push_back({h.n, h.m, h.c * weyl * power(shift, h.n) * power(clock, h.m)});
  }

  BlochFiberFamily family;
  family.flux = flux;
  family.dim = q;
  family.gauge = "peierls";
  family.evaluator = [terms = std::move(terms), q](double k1, double k2) {
    CMatrix h = CMatrix::Zero(q, q);
    for (const auto& t : terms) h += std::polar(1.0, t.n * k1 + t.m * k2) * t.op;
    return HermitianMatrix(std::move(h), 1e-10);
  };
  family.zone_extent1 = kTwoPi / static_cast<double>(q);
  family.zone_extent2 = kTwoPi;
  family.zone_gauge1 = distributed_bloch_gauge(q);
  family.zone_gauge2 = CMatrix::Identity(q, q);
  return family;
}

BoxOperator symmetric_gauge_box(double B, int L, Boundary boundary) {
  if (!std::isfinite(B)) throw InvalidArgument("symmetric_gauge_box: non-finite field");
  auto phase_x = [B](int, int m) { return -kTwoPi * B * m; };
  auto phase_y = [B](int n, int) { return kTwoPi * B * n; };
  return assemble_box(L, boundary, phase_x, phase_y, 2.0 * B);
}

BoxOperator landau_gauge_box(double alpha, int L, Boundary boundary) {
  if (!std::isfinite(alpha)) throw InvalidArgument("landau_gauge_box: non-finite flux");
  auto phase_x = [](int, int) { return 0.0; };
  auto phase_y = [alpha](int n, int) { return kTwoPi * alpha * n; };
  return assemble_box(L, boundary, phase_x, phase_y, alpha);
}

double plaquette_flux(const BoxOperator& op, int n, int m) {
  const int L = op.side;
  const bool torus = op.boundary == Boundary::MagneticPeriodic;
  if (L < 2) throw InvalidArgument("plaquette_flux: box has no plaquette");
  if (!torus && (n < 0 || m < 0 || n + 1 >= L || m + 1 >= L)) {
    throw InvalidArgument("plaquette_flux: plaquette outside the open box");
  }
  auto wrap = [L](int i) { return ((i % L) + L) % L; };
  const Eigen::Index corners[4] = {op.site(wrap(n), wrap(m)), op.site(wrap(n + 1), wrap(m)),
                                   op.site(wrap(n + 1), wrap(m + 1)), op.site(wrap(n), wrap(m + 1))};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::arg(op.matrix(corners[(i + 1) % 4], corners[i]));
  return fraction_mod_one(sum / kTwoPi);
}

std::vector<double> plaquette_fluxes(const BoxOperator& op) {
  const int count = op.boundary == Boundary::MagneticPeriodic ? op.side : op.side - 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) * count);
  for (int m = 0; m < count; ++m) {
    for (int n = 0; n < count; ++n) out.push_back(plaquette_flux(op, n, m));
  }
  return out;
}

BoxOperator add_onsite_disorder(const BoxOperator& op, std::span<const double> field) {
  if (static_cast<Eigen::Index>(field.size()) != op.matrix.dim()) {
    std::ostringstream os;
    os << "add_onsite_disorder: field has " << field.size() << " entries, box has " << op.matrix.dim() << " sites";
    throw InvalidArgument(os.str());
  }
  CMatrix h = op.matrix.matrix();
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) += field[static_cast<std::size_t>(i)];
  return BoxOperator{op.side, op.boundary, HermitianMatrix(std::move(h))};
}

}  // namespace magspec
