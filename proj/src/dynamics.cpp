#include "magspec/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "magspec/parallel.hpp"
#include "magspec/random.hpp"

namespace magspec {

WavePacket::WavePacket(CVector coefficients) : c_(std::move(coefficients)) {
  if (std::abs(c_.norm() - 1.0) >= 1e-10) throw InvalidArgument("WavePacket: state is not normalized");
}

WavePacket WavePacket::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InvalidArgument("WavePacket: cannot normalize the zero vector");
  return WavePacket(v / n);
}

Projector::Projector(CMatrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols()) throw InvalidArgument("Projector: matrix is not square");
  if (p_.size() > 0) {
    const double idempotency = (p_ * p_ - p_).cwiseAbs().maxCoeff();
    const double hermiticity = (p_ - p_.adjoint()).cwiseAbs().maxCoeff();
    if (idempotency >= 1e-10 || hermiticity >= 1e-10) {
      std::ostringstream os;
      os << "Projector: not a Hermitian idempotent (|P^2-P| = " << idempotency << ", |P-P^+| = " << hermiticity << ")";
      throw NumericalError(os.str());
    }
  }
  const double trace = p_.trace().real();
  if (std::abs(trace - std::round(trace)) >= 1e-8) throw NumericalError("Projector: trace is not an integer");
  rank_ = static_cast<int>(std::lround(trace));
}

Projector Projector::zero(Eigen::Index dim) { return Projector(CMatrix::Zero(dim, dim)); }

Projector Projector::onto(const CMatrix& columns, Eigen::Index dim) {
  if (columns.cols() == 0) return zero(dim);
  return Projector(columns * columns.adjoint());
}

Projector Projector::coordinate(Eigen::Index dim, Eigen::Index first, Eigen::Index count) {
  if (first < 0 || count < 0 || first + count > dim) throw InvalidArgument("Projector: coordinate block out of range");
  CMatrix p = CMatrix::Zero(dim, dim);
  p.block(first, first, count, count).setIdentity();
  return Projector(std::move(p));
}

Propagator::Propagator(const HermitianMatrix& h) : es_(eigensystem(h)) {}

CVector Propagator::apply(const CVector& v, double t) const {
  if (v.size() != dim()) throw InvalidArgument("evolve: state and Hamiltonian dimensions differ");
  CVector coeff = es_.vectors.adjoint() * v;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::polar(1.0, -t * es_.values(i));
  return es_.vectors * coeff;
}

WavePacket evolve(const HermitianMatrix& h, const WavePacket& psi, double t) {
  if (psi.dim() != h.dim()) throw InvalidArgument("evolve: state and Hamiltonian dimensions differ");
  if (t == 0.0) return psi;
  return WavePacket::normalized(Propagator(h).apply(psi.coefficients(), t));
}

Projector spectral_projection(const HermitianMatrix& h, double lo, double hi) {
  const EigenSystem es = eigensystem(h);
  std::vector<Eigen::Index> inside;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double e = es.values(i);
    if (std::abs(e - lo) < 1e-9 || std::abs(e - hi) < 1e-9) {
      std::ostringstream os;
      os << "spectral_projection: eigenvalue " << e << " sits on the window boundary [" << lo << ", " << hi
         << "]; the cluster is ambiguous";
      throw InvalidArgument(os.str());
    }
    if (e > lo && e < hi) inside.push_back(i);
  }
  CMatrix cols(h.dim(), static_cast<Eigen::Index>(inside.size()));
  for (std::size_t c = 0; c < inside.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = es.vectors.col(inside[c]);
  return Projector::onto(cols, h.dim());
}

IntertwinerUnitary nagy_intertwiner(const Projector& P, const Projector& Q) {
  if (P.dim() != Q.dim()) throw InvalidArgument("nagy_intertwiner: projector dimensions differ");
  const CMatrix& p = P.matrix();
  const CMatrix& q = Q.matrix();
  const CMatrix diff = q - p;
  const double gap = hermitian_norm(diff);
  if (gap >= 1.0 - 1e-12) {
    std::ostringstream os;
    os << "nagy_intertwiner: ||P - Q|| = " << gap << " >= 1, no canonical intertwiner";
    throw InvalidArgument(os.str());
  }
  const Eigen::Index n = p.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix x = id - diff * diff;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (x + x.adjoint()));
  const RVector inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
  const CMatrix x_inv_sqrt = solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().adjoint();
  CMatrix w = x_inv_sqrt * (q * p + (id - q) * (id - p));
  return IntertwinerUnitary{std::move(w), P, Q};
}

namespace {

CVector projected_state(const Projector& pi, const CVector& psi) {
  if (psi.size() != pi.dim()) throw InvalidArgument("peierls_defect: state dimension mismatch");
  CVector v = pi.matrix() * psi;
  const double n = v.norm();
  if (n < 1e-12) throw InvalidArgument("peierls_defect: the projected state vanishes");
  return v / n;
}

}  // namespace

std::vector<double> peierls_defects(const HermitianMatrix& h_full, const HermitianMatrix& h_eff, const Projector& pi,
                                    const IntertwinerUnitary& w, const CVector& psi, std::span<const double> times) {
  if (h_full.dim() != h_eff.dim() || h_full.dim() != pi.dim() || w.W.rows() != h_full.dim()) {
    throw InvalidArgument("peierls_defect: dimension mismatch");
  }
  const CVector start = projected_state(pi, psi);
  const CVector mapped = w.W * start;
  const Propagator full(h_full);
  const Propagator eff(h_eff);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    const CVector a = full.apply(start, t);
    const CVector b = w.W.adjoint() * eff.apply(mapped, t);
    out.push_back((a - b).norm());
  }
  return out;
}

double peierls_defect(const HermitianMatrix& h_full, const HermitianMatrix& h_eff, const Projector& pi,
                      const IntertwinerUnitary& w, const CVector& psi, double t) {
  const double times[1] = {t};
  return peierls_defects(h_full, h_eff, pi, w, psi, times).front();
}

double slope_through_origin(std::span<const double> t, std::span<const double> d) {
  if (t.size() != d.size()) throw InvalidArgument("slope fit: length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    num += t[i] * d[i];
    den += t[i] * t[i];
  }
  if (den == 0.0) throw InvalidArgument("slope fit: time grid has no nonzero entry");
  return num / den;
}

DefectScaling defect_scaling(std::span<const LandauBasisSpec> bases, const FourierPotential& potential,
                             std::span<const double> times, std::uint64_t seed, double min_gap) {
  DefectScaling out;
  out.times.assign(times.begin(), times.end());
  out.rows = parallel_map(bases.size(), [&](std::size_t i) {
    const LandauBasisSpec& basis = bases[i];
    DefectRow row;
    row.B = basis.B;
    row.n_phi = basis.n_phi;
    row.dim = basis.dim();

    const auto full = continuum_hamiltonian(basis, potential);
    const EigenSystem es = eigensystem(full.matrix);
    const auto n = static_cast<Eigen::Index>(basis.n_phi);
    row.cluster_gap = n < es.values.size() ? es.values(n) - es.values(n - 1) : std::numeric_limits<double>::infinity();
    row.separated = row.cluster_gap >= min_gap;
    if (!row.separated) return row;

    const Projector pi = Projector::onto(es.vectors.leftCols(n), basis.dim());
    const Projector reference = Projector::coordinate(basis.dim(), 0, n);
    const IntertwinerUnitary w = nagy_intertwiner(pi, reference);

    CMatrix eff = CMatrix::Zero(basis.dim(), basis.dim());
    eff.topLeftCorner(n, n) = lll_effective(basis, potential).matrix() +
                              basis.field() * CMatrix::Identity(n, n);

    CVector psi(basis.dim());
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      const auto idx = static_cast<std::uint64_t>(k);
      psi(k) = Complex(counter_normal(seed, 1, 2 * idx), counter_normal(seed, 1, 2 * idx + 1));
    }

    row.defects = peierls_defects(full.matrix, HermitianMatrix(std::move(eff)), pi, w, psi, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (times[k] > 0.0) row.max_ratio = std::max(row.max_ratio, row.defects[k] / times[k]);
    }
    row.slope = slope_through_origin(times, row.defects);
    return row;
  });
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (!(out.rows[i].slope < out.rows[i - 1].slope) || !out.rows[i].separated || !out.rows[i - 1].separated) {
      out.monotone = false;
    }
  }
  return out;
}

}  // namespace magspec
