#include "magspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "magspec/parallel.hpp"

namespace magspec {

SpectrumSample SpectrumSample::from_values(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericalError("spectrum sample contains a non-finite eigenvalue");
  }
  std::sort(values.begin(), values.end());
  SpectrumSample s;
  s.values = std::move(values);
  return s;
}

BandIntervals BandIntervals::single(double lo, double hi) {
  if (hi < lo) throw InvalidArgument("interval with hi < lo");
  return BandIntervals{{Interval{lo, hi}}, 0.0};
}

double BandIntervals::distance(double x) const {
  if (intervals.empty()) throw InvalidArgument("distance to an empty interval union");
  // First interval with lo > x; the candidates are it and its predecessor.
  auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  double best = std::numeric_limits<double>::infinity();
  if (it != intervals.end()) best = it->lo - x;
  if (it != intervals.begin()) {
    const auto& prev = *std::prev(it);
    best = std::min(best, x <= prev.hi ? 0.0 : x - prev.hi);
  }
  return best;
}

std::vector<Interval> BandIntervals::gaps() const {
  std::vector<Interval> out;
  for (std::size_t i = 1; i < intervals.size(); ++i) out.push_back({intervals[i - 1].hi, intervals[i].lo});
  return out;
}

double Histogram::integral() const {
  double s = 0.0;
  for (double d : density) s += d * bin_width();
  return s;
}

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const RVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> eigenvalues_hermitian(const CMatrix& m, double tol) {
  const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
  return eigenvalues_hermitian(HermitianMatrix(m, tol * scale));
}

EigenSystem eigensystem(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double eigen_residual(const HermitianMatrix& m, const EigenSystem& es) {
  const CMatrix r = m.matrix() * es.vectors - es.vectors * es.values.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < r.cols(); ++j) worst = std::max(worst, r.col(j).norm());
  return worst / std::max(1.0, hermitian_norm(m.matrix()));
}

double hermitian_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd fiber_sweep(const BlochFiberFamily& family, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InvalidArgument("fiber_sweep: grid sizes must be >= 1");
  const auto points = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  auto rows = parallel_map(points, [&](std::size_t idx) {
    const auto i1 = static_cast<int>(idx / static_cast<std::size_t>(n2));
    const auto i2 = static_cast<int>(idx % static_cast<std::size_t>(n2));
    const double k1 = kTwoPi * i1 / n1;
    const double k2 = kTwoPi * i2 / n2;
    return eigenvalues_hermitian(family(k1, k2));
  });
  Eigen::MatrixXd out(static_cast<Eigen::Index>(points), family.dim);
  for (std::size_t r = 0; r < points; ++r) {
    for (Eigen::Index b = 0; b < family.dim; ++b) out(static_cast<Eigen::Index>(r), b) = rows[r][static_cast<std::size_t>(b)];
  }
  return out;
}

SpectrumSample spectrum_union(const BlochFiberFamily& family, int n1, int n2) {
  const Eigen::MatrixXd sweep = fiber_sweep(family, n1, n2);
  SpectrumSample s = SpectrumSample::from_values({sweep.data(), sweep.data() + sweep.size()});
  s.flux = family.flux;
  s.grid1 = n1;
  s.grid2 = n2;
  s.gauge = family.gauge;
  return s;
}

double default_gap_tol(const SpectrumSample& sample) {
  if (sample.values.size() < 2) return 1e-9;
  const double scale = std::max({1.0, std::abs(sample.min()), std::abs(sample.max())});
  std::vector<double> spacings;
  spacings.reserve(sample.values.size());
  for (std::size_t i = 1; i < sample.values.size(); ++i) {
    const double d = sample.values[i] - sample.values[i - 1];
    if (d > 1e-12 * scale) spacings.push_back(d);
  }
  if (spacings.empty()) return 1e-9;
  auto mid = spacings.begin() + static_cast<std::ptrdiff_t>(spacings.size() / 2);
  std::nth_element(spacings.begin(), mid, spacings.end());
  return 10.0 * *mid;
}

BandIntervals band_intervals(const SpectrumSample& sample, double gap_tol) {
  if (sample.empty()) throw InvalidArgument("band_intervals: empty spectrum sample");
  if (!(gap_tol > 0.0)) throw InvalidArgument("band_intervals: gap_tol must be positive");
  BandIntervals out;
  out.gap_tol = gap_tol;
  Interval current{sample.values.front(), sample.values.front()};
  for (std::size_t i = 1; i < sample.values.size(); ++i) {
    const double v = sample.values[i];
    if (v - current.hi < gap_tol) {
      current.hi = v;
    } else {
      out.intervals.push_back(current);
      current = {v, v};
    }
  }
  out.intervals.push_back(current);
  return out;
}

BandIntervals band_intervals(const SpectrumSample& sample) {
  return band_intervals(sample, default_gap_tol(sample));
}

BandIntervals band_union(const Eigen::MatrixXd& sweep, double gap_tol) {
  if (sweep.size() == 0) throw InvalidArgument("band_union: empty sweep");
  if (!(gap_tol >= 0.0)) throw InvalidArgument("band_union: gap_tol must be >= 0");
  std::vector<Interval> bands;
  for (Eigen::Index b = 0; b < sweep.cols(); ++b) bands.push_back({sweep.col(b).minCoeff(), sweep.col(b).maxCoeff()});
  std::sort(bands.begin(), bands.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  BandIntervals out;
  out.gap_tol = gap_tol;
  Interval current = bands.front();
  for (std::size_t i = 1; i < bands.size(); ++i) {
    if (bands[i].lo - current.hi <= gap_tol) {
      current.hi = std::max(current.hi, bands[i].hi);
    } else {
      out.intervals.push_back(current);
      current = bands[i];
    }
  }
  out.intervals.push_back(current);
  return out;
}

double directed_hausdorff(const BandIntervals& a, const BandIntervals& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("hausdorff: empty interval union");
  // d(., b) restricted to one interval of a peaks at its endpoints or at the
  // midpoint of a gap of b lying inside it.
  const auto gaps = b.gaps();
  double worst = 0.0;
  for (const auto& iv : a.intervals) {
    worst = std::max({worst, b.distance(iv.lo), b.distance(iv.hi)});
    for (const auto& g : gaps) {
      const double mid = 0.5 * (g.lo + g.hi);
      if (mid >= iv.lo && mid <= iv.hi) worst = std::max(worst, b.distance(mid));
    }
  }
  return worst;
}

double hausdorff(const BandIntervals& a, const BandIntervals& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

Histogram dos(std::span<const double> eigenvalues, double width, int bins, double lo, double hi, bool normalize) {
  if (!(width > 0.0)) throw InvalidArgument("dos: smoothing width must be positive");
  if (bins < 1) throw InvalidArgument("dos: need at least one bin");
  if (!(hi > lo)) throw InvalidArgument("dos: empty energy range");
  Histogram h;
  h.normalized = normalize;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  h.density.assign(static_cast<std::size_t>(bins), 0.0);
  if (eigenvalues.empty()) return h;

  const double inv = 1.0 / (std::sqrt(2.0) * width);
  std::vector<double> cdf(h.edges.size());
  for (double e : eigenvalues) {
    for (std::size_t i = 0; i < h.edges.size(); ++i) cdf[i] = 0.5 * std::erf((h.edges[i] - e) * inv);
    for (std::size_t i = 0; i < h.density.size(); ++i) h.density[i] += cdf[i + 1] - cdf[i];
  }
  double mass = 0.0;
  for (double d : h.density) mass += d;
  const double norm = normalize ? (mass > 0.0 ? mass : 1.0) : static_cast<double>(eigenvalues.size());
  const double w = h.bin_width();
  for (double& d : h.density) d /= norm * w;
  return h;
}

Histogram dos(const SpectrumSample& sample, double width, int bins) {
  if (sample.empty()) throw InvalidArgument("dos: empty spectrum sample");
  return dos(sample.values, width, bins, sample.min() - 8.0 * width, sample.max() + 8.0 * width);
}

ChernReport chern_numbers(const BlochFiberFamily& family, int n) {
  if (n < 2) throw InvalidArgument("chern_numbers: grid must be at least 2x2");
  const Eigen::Index q = family.dim;
  const double h1 = family.zone_extent1 / n;
  const double h2 = family.zone_extent2 / n;
  const int side = n + 1;

  // Fibers on the closed (n+1)^2 grid for the gap certificate; eigenvectors
  // only on the n^2 independent points.
  const auto fibers = parallel_map(static_cast<std::size_t>(side) * side, [&](std::size_t idx) {
    const int a = static_cast<int>(idx) / side;
    const int b = static_cast<int>(idx) % side;
    return family(a * h1, b * h2).matrix();
  });
  auto fiber = [&](int a, int b) -> const CMatrix& { return fibers[static_cast<std::size_t>(a * side + b)]; };

  const auto systems = parallel_map(static_cast<std::size_t>(n) * n, [&](std::size_t idx) {
    const int a = static_cast<int>(idx) / n;
    const int b = static_cast<int>(idx) % n;
    return eigensystem(HermitianMatrix(fiber(a, b), 1e-10));
  });
  auto system = [&](int a, int b) -> const EigenSystem& { return systems[static_cast<std::size_t>(a * n + b)]; };

  auto describe = [&](int a, int b) {
    std::ostringstream os;
    os << "k = (" << a * h1 << ", " << b * h2 << ")";
    return os.str();
  };

  ChernReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const RVector& ev = system(a, b).values;
      for (Eigen::Index r = 0; r + 1 < q; ++r) {
        const double g = ev(r + 1) - ev(r);
        if (g < report.min_gap) report.min_gap = g;
        if (g < 1e-9) {
          std::ostringstream os;
          os << "chern_numbers: bands " << r << " and " << r + 1 << " are degenerate at " << describe(a, b);
          throw NumericalError(os.str());
        }
      }
    }
  }

  // Weyl certificate per cell: inside the cell the gap cannot drop below the
  // smallest corner gap minus twice the fiber variation to the nearest corner.
  if (q > 1) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double d1 = std::max(hermitian_norm(fiber(a + 1, b) - fiber(a, b)),
                                   hermitian_norm(fiber(a + 1, b + 1) - fiber(a, b + 1)));
        const double d2 = std::max(hermitian_norm(fiber(a, b + 1) - fiber(a, b)),
                                   hermitian_norm(fiber(a + 1, b + 1) - fiber(a + 1, b)));
        const double bound = d1 + d2;
        const int corners[4][2] = {{a, b}, {a + 1, b}, {a, b + 1}, {a + 1, b + 1}};
        for (Eigen::Index r = 0; r + 1 < q; ++r) {
          double smallest = std::numeric_limits<double>::infinity();
          int at = 0;
          for (int c = 0; c < 4; ++c) {
            const RVector& ev = system(corners[c][0] % n, corners[c][1] % n).values;
            const double g = ev(r + 1) - ev(r);
            if (g < smallest) {
              smallest = g;
              at = c;
            }
          }
          if (smallest <= bound) {
            std::ostringstream os;
            os << "chern_numbers: bands " << r << " and " << r + 1 << " may cross near "
               << describe(corners[at][0], corners[at][1]) << " (gap " << smallest
               << " not above the in-cell variation bound " << bound
               << "); the bands touch or the grid is too coarse, try a finer grid";
            throw NumericalError(os.str());
          }
        }
      }
    }
  }

  // Eigenvectors on the closed grid: crossing the zone boundary applies the
  // family's conjugating gauge.
  auto vec = [&](int a, int b, Eigen::Index r) -> CVector {
    CVector v = system(a % n, b % n).vectors.col(r);
    if (b == n) v = family.zone_gauge2 * v;
    if (a == n) v = family.zone_gauge1 * v;
    return v;
  };
  auto link = [](const CVector& u, const CVector& v) {
    const Complex z = u.dot(v);
    if (std::abs(z) < 1e-12) throw NumericalError("chern_numbers: vanishing link variable; try a finer grid");
    return z / std::abs(z);
  };

  report.raw.assign(static_cast<std::size_t>(q), 0.0);
  for (Eigen::Index r = 0; r < q; ++r) {
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const CVector u00 = vec(a, b, r);
        const CVector u10 = vec(a + 1, b, r);
        const CVector u11 = vec(a + 1, b + 1, r);
        const CVector u01 = vec(a, b + 1, r);
        sum += std::arg(link(u00, u10) * link(u10, u11) * link(u11, u01) * link(u01, u00));
      }
    }
    report.raw[static_cast<std::size_t>(r)] = sum / kTwoPi;
  }

  for (double raw : report.raw) {
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) >= 0.01) {
      std::ostringstream os;
      os << "chern_numbers: raw field-strength sum " << raw << " is not an integer; try a finer grid";
      throw NumericalError(os.str());
    }
    report.chern.push_back(static_cast<int>(rounded));
  }
  return report;
}

}  // namespace magspec
