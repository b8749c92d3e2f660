#include "magspec/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "magspec/disorder.hpp"
#include "magspec/dynamics.hpp"
#include "magspec/landau.hpp"
#include "magspec/lattice.hpp"
#include "magspec/spectral.hpp"

namespace magspec::cli {

using nlohmann::json;

namespace {

json intervals_json(const BandIntervals& b) {
  json out = json::array();
  for (const auto& iv : b.intervals) out.push_back({iv.lo, iv.hi});
  return out;
}

std::string fmt(double x) { return json(x).dump(); }

BandIntervals bands_of(const SpectrumSample& s, std::optional<double> gap_tol) {
  return gap_tol ? band_intervals(s, *gap_tol) : band_intervals(s);
}

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double f) {
  const double pos = f * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double w = pos - static_cast<double>(i);
  return sorted[i] * (1.0 - w) + sorted[i + 1] * w;
}

RationalFlux rational_from_real(const std::string& what, double x) {
  const RationalFlux f = RationalFlux::approximate(x, 4096);
  if (std::abs(f.value() - x) > 1e-12) {
    throw ConfigError(what + " = " + fmt(x) + " is not a rational number with denominator <= 4096");
  }
  return f;
}

FourierPotential potential_of(const RunConfig& cfg) {
  if (cfg.text("potential") == "zero") return FourierPotential::zero();
  return FourierPotential::cosine_lattice(cfg.real("amplitude"));
}

// Band functions have |grad E| <= 2 sqrt 2, so a grid of spacing h resolves the
// band edges to within 2h.
json grid_report(int kgrid) {
  const double h = kTwoPi / kgrid;
  return {{"kgrid", kgrid}, {"grid_spacing", h}, {"resolution", 2.0 * h}};
}

double cell_length_of(const RunConfig& cfg) { return cfg.text("cell") == "2pi" ? kTwoPi : 1.0; }

std::vector<LandauBasisSpec> strong_field_bases(const RunConfig& cfg, json& requested) {
  std::vector<LandauBasisSpec> bases;
  const int cells = static_cast<int>(cfg.integer("cells"));
  const double cell = cell_length_of(cfg);
  for (double B : cfg.reals("B")) {
    if (!(B > 0.0)) throw ConfigError("B must be > 0");
    const FeasibleField f = nearest_feasible_field(B, cells, cell);
    bases.push_back(landau_torus_basis(f.B, f.n_phi, static_cast<int>(cfg.integer("n_ll")), cell));
    requested.push_back(B);
  }
  return bases;
}

void add_strictly_decreasing_check(RunArtifact& a, const std::string& name, const std::vector<double>& v) {
  bool ok = true;
  for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i] < v[i - 1];
  std::string detail;
  for (double x : v) detail += (detail.empty() ? "" : " > ") + fmt(x);
  a.checks.push_back({name, ok, detail});
}

// ---------------------------------------------------------------------------

RunArtifact butterfly(const RunConfig& cfg) {
  const int qmax = static_cast<int>(cfg.integer("qmax"));
  const int kgrid = static_cast<int>(cfg.integer("kgrid"));
  static constexpr double kQuantiles[] = {0.1, 0.25, 0.5, 0.75, 0.9};

  RunArtifact a;
  a.columns = {"p", "q", "band_index", "E_min", "E_max", "Q10", "Q25", "Q50", "Q75", "Q90"};

  // Per flux p/q: band rows (E_min, E_max, quantiles).
  std::map<std::pair<long, long>, std::vector<std::vector<double>>> table;
  for (long q = 1; q <= qmax; ++q) {
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Eigen::MatrixXd sweep = fiber_sweep(hofstadter_family(RationalFlux(p, q)), kgrid, kgrid);
      auto& bands = table[{p, q}];
      for (Eigen::Index b = 0; b < sweep.cols(); ++b) {
        std::vector<double> col(sweep.col(b).data(), sweep.col(b).data() + sweep.rows());
        std::sort(col.begin(), col.end());
        std::vector<double> row = {col.front(), col.back()};
        for (double f : kQuantiles) row.push_back(quantile(col, f));
        json out = {p, q, b};
        for (double x : row) out.push_back(x);
        a.add_row(std::move(out));
        bands.push_back(std::move(row));
      }
    }
  }

  // E -> -E maps band i onto band q-1-i with edges and quantiles mirrored;
  // alpha -> 1 - alpha maps p/q onto (q-p)/q.
  double energy_asym = 0.0;
  double flux_asym = 0.0;
  for (const auto& [key, bands] : table) {
    const auto [p, q] = key;
    const std::size_t nb = bands.size();
    const std::size_t nq = std::size(kQuantiles);
    for (std::size_t i = 0; i < nb; ++i) {
      const auto& b = bands[i];
      const auto& m = bands[nb - 1 - i];
      energy_asym = std::max({energy_asym, std::abs(b[0] + m[1]), std::abs(b[1] + m[0])});
      for (std::size_t j = 0; j < nq; ++j) energy_asym = std::max(energy_asym, std::abs(b[2 + j] + m[2 + nq - 1 - j]));
      const auto& mirror = table.at({q - p, q});
      for (std::size_t j = 0; j < b.size(); ++j) flux_asym = std::max(flux_asym, std::abs(b[j] - mirror[i][j]));
    }
  }
  a.summary = {{"fluxes", table.size()}, {"energy_asymmetry", energy_asym}, {"flux_asymmetry", flux_asym},
               {"grid", grid_report(kgrid)}};
  a.checks.push_back({"energy_reflection", energy_asym <= 5e-3, fmt(energy_asym)});
  a.checks.push_back({"flux_reflection", flux_asym <= 5e-3, fmt(flux_asym)});
  return a;
}

RunArtifact fiber_spectrum(const RunConfig& cfg) {
  const RationalFlux flux = cfg.flux("flux");
  const int kgrid = static_cast<int>(cfg.integer("kgrid"));
  const BlochFiberFamily family = hofstadter_family(flux);
  const Eigen::MatrixXd sweep = fiber_sweep(family, kgrid, kgrid);
  const BandIntervals bands = band_union(sweep, cfg.optional_real("gap_tol").value_or(kBandMergeTol));

  RunArtifact a;
  a.columns = {"interval_index", "lo", "hi"};
  for (std::size_t i = 0; i < bands.size(); ++i) a.add_row({i, bands.intervals[i].lo, bands.intervals[i].hi});
  json band_edges = json::array();
  for (Eigen::Index b = 0; b < sweep.cols(); ++b) band_edges.push_back({sweep.col(b).minCoeff(), sweep.col(b).maxCoeff()});
  a.summary = {{"flux", flux.to_string()}, {"bands", band_edges},       {"intervals", bands.size()},
               {"min", sweep.minCoeff()},  {"max", sweep.maxCoeff()},            {"gap_tol", bands.gap_tol},
               {"grid", grid_report(kgrid)}};
  return a;
}

RunArtifact harper_spectrum(const RunConfig& cfg) {
  const RationalFlux flux = cfg.flux("flux");
  const int kgrid = static_cast<int>(cfg.integer("kgrid"));
  BlochFiberFamily harper;
  harper.flux = flux;
  harper.dim = flux.q();
  harper.gauge = "harper";
  harper.evaluator = [flux](double k1, double k2) { return harper_fiber(flux, k1 / kTwoPi, k2); };

  const double gap_tol = cfg.optional_real("gap_tol").value_or(kBandMergeTol);
  const BandIntervals h = band_union(fiber_sweep(harper, kgrid, kgrid), gap_tol);
  const BandIntervals ref = band_union(fiber_sweep(hofstadter_family(flux), kgrid, kgrid), gap_tol);
  const double d = hausdorff(h, ref);

  RunArtifact a;
  a.columns = {"source", "interval_index", "lo", "hi"};
  for (std::size_t i = 0; i < h.size(); ++i) a.add_row({"harper", i, h.intervals[i].lo, h.intervals[i].hi});
  for (std::size_t i = 0; i < ref.size(); ++i) a.add_row({"hofstadter", i, ref.intervals[i].lo, ref.intervals[i].hi});
  a.summary = {{"flux", flux.to_string()}, {"hausdorff", d}, {"tol", cfg.real("tol")}, {"grid", grid_report(kgrid)}};
  a.checks.push_back({"harper_hofstadter_hausdorff", d < cfg.real("tol"), fmt(d)});
  return a;
}

RunArtifact peierls_check(const RunConfig& cfg) {
  const int kgrid = static_cast<int>(cfg.integer("kgrid"));
  const double tol = cfg.real("tol");
  RunArtifact a;
  a.columns = {"flux", "k_points", "max_eigenvalue_difference"};
  double worst = 0.0;
  for (const RationalFlux& flux : cfg.fluxes("flux")) {
    const BlochFiberFamily peierls = peierls_quantize(FourierDispersion::nearest_neighbour(), flux);
    double diff = 0.0;
    for (int i = 0; i < kgrid; ++i) {
      for (int j = 0; j < kgrid; ++j) {
        const double k1 = kTwoPi * i / kgrid;
        const double k2 = kTwoPi * j / kgrid;
        const auto e1 = eigenvalues_hermitian(peierls(k1, k2));
        const auto e2 = eigenvalues_hermitian(hofstadter_fiber(flux, k1, k2));
        for (std::size_t n = 0; n < e1.size(); ++n) diff = std::max(diff, std::abs(e1[n] - e2[n]));
      }
    }
    worst = std::max(worst, diff);
    a.add_row({flux.to_string(), kgrid * kgrid, diff});
  }
  a.summary = {{"max_difference", worst}};
  a.checks.push_back({"peierls_identity", worst < tol, fmt(worst)});
  return a;
}

RunArtifact gauge_check(const RunConfig& cfg) {
  const double B = cfg.real("B");
  const int L = static_cast<int>(cfg.integer("L"));
  const int kgrid = cfg.integer("kgrid") > 0 ? static_cast<int>(cfg.integer("kgrid")) : L;
  const RationalFlux flux = rational_from_real("2B", 2.0 * B);
  const auto gap_tol = cfg.optional_real("gap_tol");

  const BoxOperator box = symmetric_gauge_box(B, L, Boundary::MagneticPeriodic);
  const SpectrumSample torus = SpectrumSample::from_values(eigenvalues_hermitian(box.matrix));
  const BandIntervals sym = bands_of(torus, gap_tol);
  const BandIntervals landau = bands_of(spectrum_union(hofstadter_family(flux), kgrid, kgrid), gap_tol);
  const double d = hausdorff(sym, landau);

  RunArtifact a;
  a.columns = {"source", "interval_index", "lo", "hi"};
  for (std::size_t i = 0; i < sym.size(); ++i) a.add_row({"symmetric_torus", i, sym.intervals[i].lo, sym.intervals[i].hi});
  for (std::size_t i = 0; i < landau.size(); ++i) {
    a.add_row({"landau_fibers", i, landau.intervals[i].lo, landau.intervals[i].hi});
  }
  a.summary = {{"B", B}, {"flux", flux.to_string()}, {"L", L}, {"hausdorff", d}, {"tol", cfg.real("tol")},
               {"grid", grid_report(kgrid)}};
  a.checks.push_back({"gauge_hausdorff", d < cfg.real("tol"), fmt(d)});
  return a;
}

// Diophantine prediction: t_r solves p t_r = r (mod q) with |t_r| <= q/2 and
// band r carries t_r - t_{r-1}.
std::optional<std::vector<int>> diophantine_chern(const RationalFlux& flux) {
  const long p = static_cast<long>(flux.mod_one().p());
  const long q = static_cast<long>(flux.q());
  std::vector<long> t(static_cast<std::size_t>(q) + 1, 0);
  for (long r = 1; r < q; ++r) {
    std::vector<long> candidates;
    for (long s = -q / 2; s <= q / 2; ++s) {
      if ((((p * s - r) % q) + q) % q == 0) candidates.push_back(s);
    }
    if (candidates.size() != 1) return std::nullopt;
    t[static_cast<std::size_t>(r)] = candidates.front();
  }
  std::vector<int> out;
  for (long r = 1; r <= q; ++r) out.push_back(static_cast<int>(t[static_cast<std::size_t>(r)] - t[static_cast<std::size_t>(r - 1)]));
  return out;
}

RunArtifact chern(const RunConfig& cfg) {
  const RationalFlux flux = cfg.flux("flux");
  const ChernReport r = chern_numbers(hofstadter_family(flux), static_cast<int>(cfg.integer("kgrid")));
  RunArtifact a;
  a.columns = {"band_index", "chern", "raw"};
  int sum = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < r.chern.size(); ++i) {
    a.add_row({i, r.chern[i], r.raw[i]});
    sum += r.chern[i];
    worst = std::max(worst, std::abs(r.raw[i] - r.chern[i]));
  }
  a.summary = {{"flux", flux.to_string()}, {"sum", sum}, {"max_raw_deviation", worst}, {"min_gap", r.min_gap}};
  a.checks.push_back({"chern_sum_zero", sum == 0, std::to_string(sum)});
  if (const auto expected = diophantine_chern(flux)) {
    a.summary["diophantine"] = *expected;
    a.checks.push_back({"diophantine", *expected == r.chern, json(*expected).dump()});
  }
  return a;
}

RunArtifact continuum_spectrum(const RunConfig& cfg) {
  const double B_req = cfg.real("B");
  if (!(B_req > 0.0)) throw ConfigError("B must be > 0");
  const int cells = static_cast<int>(cfg.integer("cells"));
  const double cell = cell_length_of(cfg);
  const FeasibleField f = nearest_feasible_field(B_req, cells, cell);
  if (!cfg.flag("snap_B") && std::abs(f.B - B_req) > 1e-12 * B_req) {
    throw InfeasibleModel("B = " + fmt(B_req) + " is not quantized on a torus of " + std::to_string(cells) +
                          " cells; nearest feasible B = " + fmt(f.B) + " (n_phi = " + std::to_string(f.n_phi) + ")");
  }
  const LandauBasisSpec basis = landau_torus_basis(f.B, f.n_phi, static_cast<int>(cfg.integer("n_ll")), cell);
  FourierPotential potential = potential_of(cfg);

  const double W = cfg.real("disorder_W");
  if (W > 0.0) {
    const auto convention =
        cfg.text("disorder_scale") == "slow" ? ScaleConvention::SlowVariation : ScaleConvention::FastVariation;
    const int cutoff = static_cast<int>(cfg.integer("disorder_cutoff"));
    const ScaledPotential w =
        scaled_realization(static_cast<std::uint64_t>(cfg.integer("seed")), static_cast<int>(cfg.integer("disorder_coarse")),
                           cfg.real("disorder_bump"), scale_factor(f.B, convention), DistributionSpec::uniform(W));
    std::vector<PotentialHarmonic> all = potential.harmonics();
    const FourierPotential disorder = w.periodized(basis, std::max(8, 4 * cutoff + 2), cutoff);
    all.insert(all.end(), disorder.harmonics().begin(), disorder.harmonics().end());
    potential = FourierPotential(std::move(all));
  }

  const ContinuumHamiltonian h = continuum_hamiltonian(basis, potential);
  const std::vector<double> e = eigenvalues_hermitian(h.matrix);
  const double b = basis.field();

  RunArtifact a;
  a.columns = {"index", "energy", "nearest_level"};
  for (std::size_t i = 0; i < e.size(); ++i) {
    const long level = std::max(0L, std::lround((e[i] / b - 1.0) / 2.0));
    a.add_row({i, e[i], level});
  }
  a.summary = {{"B_requested", B_req}, {"B", f.B},           {"field", b},
               {"n_phi", f.n_phi},     {"cells", cells},     {"cells_x", basis.cells_x},
               {"cells_y", basis.cells_y}, {"cell_length", basis.cell_length}, {"dim", basis.dim()}};

  if (potential.harmonics().empty()) {
    // Free Landau levels: each level b(2n+1) with multiplicity n_phi.
    double rel = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double level = basis.level_energy(static_cast<int>(i / static_cast<std::size_t>(f.n_phi)));
      rel = std::max(rel, std::abs(e[i] - level) / level);
    }
    a.summary["landau_level_deviation"] = rel;
    a.checks.push_back({"landau_levels", rel < 1e-10, fmt(rel)});
  }
  return a;
}

RunArtifact lll_compare(const RunConfig& cfg) {
  json requested = json::array();
  const auto bases = strong_field_bases(cfg, requested);
  const FourierPotential V = potential_of(cfg);
  const auto rows = strong_field_report(bases, V, cfg.real("min_gap"));

  RunArtifact a;
  a.columns = {"B_requested", "B",         "n_phi",         "dim",
               "hausdorff",   "cluster_width", "cluster_gap", "next_level_coupling"};
  std::vector<double> distances;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.separated) {
      throw InfeasibleModel("lowest cluster at B = " + fmt(r.B) + " is not separated (gap " + fmt(r.cluster_gap) +
                            " < min_gap " + fmt(cfg.real("min_gap")) + ")");
    }
    a.add_row({requested[i], r.B, r.n_phi, r.dim, r.hausdorff, r.cluster_width, r.cluster_gap, r.next_level_coupling});
    distances.push_back(r.hausdorff);
  }
  a.summary = {{"hausdorff", distances}, {"cell_length", cell_length_of(cfg)}};
  add_strictly_decreasing_check(a, "hausdorff_strictly_decreasing", distances);
  return a;
}

RunArtifact dynamics_defect(const RunConfig& cfg) {
  json requested = json::array();
  const auto bases = strong_field_bases(cfg, requested);
  const FourierPotential V = potential_of(cfg);
  const double t_max = cfg.real("t_max");
  const double dt = cfg.real("dt");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  std::vector<double> times;
  for (long i = 0; i * dt <= t_max + 1e-9 * dt; ++i) times.push_back(static_cast<double>(i) * dt);

  const DefectScaling s = defect_scaling(bases, V, times, static_cast<std::uint64_t>(cfg.integer("seed")),
                                         cfg.real("min_gap"));
  RunArtifact a;
  a.columns = {"B_requested", "B", "n_phi", "dim", "slope", "max_ratio", "d0", "d_max", "cluster_gap"};
  std::vector<double> slopes;
  double d0 = 0.0;
  double dmax = 0.0;
  json defects = json::array();
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    if (!r.separated) {
      throw InfeasibleModel("lowest cluster at B = " + fmt(r.B) + " is not separated (gap " + fmt(r.cluster_gap) + ")");
    }
    const double row_max = *std::max_element(r.defects.begin(), r.defects.end());
    a.add_row({requested[i], r.B, r.n_phi, r.dim, r.slope, r.max_ratio, r.defects.front(), row_max, r.cluster_gap});
    slopes.push_back(r.slope);
    d0 = std::max(d0, r.defects.front());
    dmax = std::max(dmax, row_max);
    defects.push_back(r.defects);
  }
  a.summary = {{"times", times}, {"defects", defects}, {"slopes", slopes}, {"monotone", s.monotone}};
  a.checks.push_back({"initial_defect", d0 < 1e-10, fmt(d0)});
  a.checks.push_back({"defect_bounded", dmax <= 2.0, fmt(dmax)});
  add_strictly_decreasing_check(a, "slopes_strictly_decreasing", slopes);
  return a;
}

RunArtifact disorder_dos(const RunConfig& cfg) {
  const RationalFlux flux = cfg.flux("flux");
  const int L = static_cast<int>(cfg.integer("L"));
  const double B = 0.5 * flux.value();
  const BoxOperator clean = symmetric_gauge_box(B, L, Boundary::MagneticPeriodic);
  const SpectrumSample fibers = spectrum_union(hofstadter_family(flux), L, L);
  const BandIntervals bands =
      band_union(fiber_sweep(hofstadter_family(flux), L, L), cfg.optional_real("gap_tol").value_or(kBandMergeTol));

  const DosParams params{cfg.real("width"), static_cast<int>(cfg.integer("bins")), cfg.real("lo"), cfg.real("hi")};
  if (!(params.hi > params.lo)) throw ConfigError("hi must exceed lo");
  const Histogram clean_dos = dos(fibers.values, params.width, params.bins, params.lo, params.hi, true);

  const bool gaussian = cfg.text("distribution") == "gaussian";
  const bool scaled = cfg.text("potential") == "scaled";
  const ProfileSpec profile = cfg.text("profile") == "gaussian" ? ProfileSpec{BumpProfile::Gaussian, cfg.real("bump_width")}
                                                                : ProfileSpec{};
  const double lambda =
      B > 0.0 ? scale_factor(B, cfg.text("scale") == "slow" ? ScaleConvention::SlowVariation : ScaleConvention::FastVariation)
              : 1.0;
  const auto seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const int n = static_cast<int>(cfg.integer("realizations"));

  RunArtifact a;
  a.columns = {"W", "E", "density", "std_error"};
  json fills = json::array();
  std::vector<std::pair<double, double>> by_w;
  std::optional<double> collapse;
  for (double W : cfg.reals("W")) {
    const DistributionSpec dist = gaussian ? DistributionSpec::gaussian(W) : DistributionSpec::uniform(W);
    const ModelBuilder model = [&](std::uint64_t s) {
      std::vector<double> field;
      if (scaled) {
        const ScaledPotential v =
            scaled_realization(s, static_cast<int>(cfg.integer("coarse")), cfg.real("bump_width"), lambda, dist);
        field.resize(static_cast<std::size_t>(L) * L);
        for (int m = 0; m < L; ++m) {
          for (int x = 0; x < L; ++x) field[static_cast<std::size_t>(x + L * m)] = v(x, m);
        }
      } else {
        field = lattice_field(anderson_realization(L, dist, s, profile));
      }
      return eigenvalues_hermitian(add_onsite_disorder(clean, field).matrix);
    };
    const EnsembleStats stats = ensemble_dos(model, n, seed, params);
    for (std::size_t b = 0; b < stats.mean.bins(); ++b) {
      a.add_row({W, stats.mean.center(b), stats.mean.density[b], stats.std_error[b]});
    }
    double fill = 0.0;
    if (bands.size() >= 2) fill = gap_fill_fraction(bands, stats);
    fills.push_back({{"W", W}, {"gap_fill", fill}});
    by_w.emplace_back(W, fill);
    if (W == 0.0) {
      double l1 = 0.0;
      for (std::size_t b = 0; b < clean_dos.bins(); ++b) {
        l1 += std::abs(stats.mean.density[b] - clean_dos.density[b]) * clean_dos.bin_width();
      }
      collapse = l1;
    }
  }

  a.summary = {{"flux", flux.to_string()}, {"B", B}, {"clean_bands", intervals_json(bands)}, {"gap_fill", fills}};
  if (bands.size() >= 2) {
    std::sort(by_w.begin(), by_w.end());
    bool monotone = true;
    std::string detail;
    for (std::size_t i = 0; i < by_w.size(); ++i) {
      if (by_w[i].first > 0.0 && i > 0 && by_w[i - 1].first > 0.0) monotone = monotone && by_w[i].second >= by_w[i - 1].second;
      detail += (detail.empty() ? "" : ", ") + fmt(by_w[i].first) + ": " + fmt(by_w[i].second);
    }
    a.checks.push_back({"gap_fill_nondecreasing", monotone, detail});
    for (const auto& [W, fill] : by_w) {
      if (W == 0.0) a.checks.push_back({"clean_gap_leakage", fill < 0.01, fmt(fill)});
    }
  }
  if (collapse) {
    a.summary["clean_dos_l1"] = *collapse;
    a.checks.push_back({"zero_disorder_collapse", *collapse < 0.01, fmt(*collapse)});
  }
  return a;
}

}  // namespace

RunArtifact run_command(const RunConfig& cfg) {
  static const std::map<std::string, std::function<RunArtifact(const RunConfig&)>> table = {
      {"butterfly", butterfly},
      {"fiber-spectrum", fiber_spectrum},
      {"harper-spectrum", harper_spectrum},
      {"peierls-check", peierls_check},
      {"gauge-check", gauge_check},
      {"chern", chern},
      {"continuum-spectrum", continuum_spectrum},
      {"lll-compare", lll_compare},
      {"dynamics-defect", dynamics_defect},
      {"disorder-dos", disorder_dos},
  };
  const auto it = table.find(cfg.command);
  if (it == table.end()) throw ConfigError("unknown command '" + cfg.command + "'");

  const auto start = std::chrono::steady_clock::now();
  RunArtifact a = it->second(cfg);
  a.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  a.command = cfg.command;
  a.config = cfg.params;
  return a;
}

int exit_code(const RunArtifact& artifact) { return artifact.passed() ? 0 : 3; }

}  // namespace magspec::cli
