// Acceptance suite: every criterion at its stated tolerance and runtime
// budget, one PASS/FAIL line each. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "magspec/cli/commands.hpp"
#include "magspec/landau.hpp"
#include "magspec/spectral.hpp"

using namespace magspec;
using namespace magspec::cli;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [failed]");
  }
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

RunArtifact run(const std::string& command, const std::vector<Override>& flags) {
  return run_command(parse_config(command, std::nullopt, flags));
}

const Check* find_check(const RunArtifact& a, const std::string& name) {
  for (const auto& c : a.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void require_check(Outcome& o, const RunArtifact& a, const std::string& name) {
  const Check* c = find_check(a, name);
  o.require(c != nullptr && c->passed, name + " " + (c ? c->detail : "missing"));
}

Outcome zero_flux() {
  Outcome o;
  const auto a = run("fiber-spectrum", {{"flux", "0/1"}, {"kgrid", "200"}});
  BandIntervals set;
  for (const auto& row : a.rows) set.intervals.push_back({row[1].get<double>(), row[2].get<double>()});
  const double d = hausdorff(set, BandIntervals::single(-4.0, 4.0));
  o.require(d < 1e-3, "hausdorff to [-4,4] = " + num(d));
  return o;
}

Outcome half_flux() {
  Outcome o;
  const auto a = run("fiber-spectrum", {{"flux", "1/2"}, {"kgrid", "64"}});
  BandIntervals set;
  for (const auto& row : a.rows) set.intervals.push_back({row[1].get<double>(), row[2].get<double>()});
  const double r = 2.0 * std::sqrt(2.0);
  const double d = hausdorff(set, BandIntervals::single(-r, r));
  o.require(d < 1e-4, "hausdorff to [-2sqrt2, 2sqrt2] = " + num(d));
  const auto& bands = a.summary["bands"];
  const double gap = bands[1][0].get<double>() - bands[0][1].get<double>();
  o.require(gap < 1e-3, "gap at 0 = " + num(gap));
  return o;
}

Outcome gauge() {
  Outcome o;
  const auto a = run("gauge-check", {{"B", "1/8"}, {"L", "16"}});
  const double d = a.summary["hausdorff"].get<double>();
  o.require(d < 0.05, "symmetric vs landau hausdorff = " + num(d));
  return o;
}

Outcome peierls() {
  Outcome o;
  const auto a = run("peierls-check", {{"flux", "1/3,2/5"}});
  const double d = a.summary["max_difference"].get<double>();
  o.require(d < 1e-10, "max eigenvalue difference = " + num(d));
  return o;
}

Outcome duality() {
  Outcome o;
  for (const char* f : {"1/3", "2/5"}) {
    const auto a = run("harper-spectrum", {{"flux", f}, {"kgrid", "64"}});
    const double d = a.summary["hausdorff"].get<double>();
    o.require(d < 1e-2, std::string(f) + ": " + num(d));
  }
  return o;
}

Outcome chern() {
  Outcome o;
  const auto a = run("chern", {{"flux", "1/3"}, {"kgrid", "30"}});
  std::vector<int> c;
  for (const auto& row : a.rows) c.push_back(row[1].get<int>());
  o.require(c == std::vector<int>{1, -2, 1}, "chern = " + json(c).dump());
  o.require(a.summary["max_raw_deviation"].get<double>() < 0.01,
            "raw deviation = " + num(a.summary["max_raw_deviation"].get<double>()));
  o.require(a.summary["sum"].get<int>() == 0, "band sum = " + a.summary["sum"].dump());
  bool degenerate = false;
  try {
    run("chern", {{"flux", "1/2"}, {"kgrid", "30"}});
  } catch (const NumericalError&) {
    degenerate = true;
  }
  o.require(degenerate, "flux 1/2 raises a degeneracy error");
  return o;
}

Outcome landau_levels() {
  Outcome o;
  for (double B : {5.0, 10.0, 20.0}) {
    const auto a = run("continuum-spectrum",
                       {{"B", num(B)}, {"potential", "zero"}, {"n_ll", "6"}, {"cells", "4"}});
    const int n_phi = a.summary["n_phi"].get<int>();
    const double b = a.summary["field"].get<double>();
    double rel = 0.0;
    bool multiplicity = true;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      const double e = a.rows[i][1].get<double>();
      const auto level = static_cast<int>(i / static_cast<std::size_t>(n_phi));
      rel = std::max(rel, std::abs(e - b * (2 * level + 1)) / (b * (2 * level + 1)));
      multiplicity = multiplicity && a.rows[i][2].get<int>() == level;
    }
    o.require(rel < 1e-10 && multiplicity && a.rows.size() == static_cast<std::size_t>(6 * n_phi),
              "B=" + num(a.summary["B"].get<double>()) + " rel " + num(rel));
  }
  return o;
}

Outcome strong_field() {
  Outcome o;
  const auto a = run("lll-compare", {{"B", "10,20,40"}});
  const auto d = a.summary["hausdorff"].get<std::vector<double>>();
  o.require(d.size() == 3 && d[0] > d[1] && d[1] > d[2],
            "hausdorff " + num(d.at(0)) + " > " + num(d.at(1)) + " > " + num(d.at(2)));
  return o;
}

Outcome dynamics() {
  Outcome o;
  const auto a = run("dynamics-defect", {{"B", "10,20,40"}, {"t_max", "5"}, {"dt", "0.5"}});
  const auto times = a.summary["times"].get<std::vector<double>>();
  o.require(times.size() == 11 && times.back() == 5.0, "time grid of " + std::to_string(times.size()) + " points");
  double d0 = 0.0;
  double dmax = 0.0;
  for (const auto& row : a.summary["defects"]) {
    d0 = std::max(d0, row[0].get<double>());
    for (const auto& d : row) dmax = std::max(dmax, d.get<double>());
  }
  o.require(d0 < 1e-10, "d(0) = " + num(d0));
  o.require(dmax <= 2.0, "max d = " + num(dmax));
  const auto c = a.summary["slopes"].get<std::vector<double>>();
  o.require(c.size() == 3 && c[0] > c[1] && c[1] > c[2],
            "C = " + num(c.at(0)) + " > " + num(c.at(1)) + " > " + num(c.at(2)));
  return o;
}

Outcome disorder() {
  Outcome o;
  const std::vector<Override> flags = {{"flux", "1/3"}, {"L", "30"}, {"realizations", "20"}, {"W", "0,0.5,1,2"},
                                       {"seed", "1000"}, {"width", "0.02"}};
  const auto a = run("disorder-dos", flags);
  std::vector<double> fill;
  for (const auto& f : a.summary["gap_fill"]) fill.push_back(f["gap_fill"].get<double>());
  o.require(fill.size() == 4 && fill[1] <= fill[2] && fill[2] <= fill[3],
            "gap fill W=0.5,1,2: " + num(fill.at(1)) + ", " + num(fill.at(2)) + ", " + num(fill.at(3)));
  o.require(fill.at(0) < 0.01, "W=0 gap leakage " + num(fill.at(0)));
  const double l1 = a.summary["clean_dos_l1"].get<double>();
  o.require(l1 < 0.01, "W=0 vs clean DOS L1 " + num(l1));

  // Same base seed: the W = 2 ensemble reproduces bit for bit.
  auto repeat = flags;
  repeat[3] = {"W", "2"};
  const auto b = run("disorder-dos", repeat);
  json first = json::array();
  for (const auto& row : a.rows) {
    if (row[0].get<double>() == 2.0) first.push_back(row);
  }
  o.require(first == b.rows, "W=2 rerun identical");
  return o;
}

Outcome butterfly() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto a = run("butterfly", {{"qmax", "20"}, {"kgrid", "64"}});
  const double first = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(first < 60.0, "single run " + num(first) + " s < 60 s");
  require_check(o, a, "energy_reflection");
  require_check(o, a, "flux_reflection");
  const auto b = run("butterfly", {{"qmax", "20"}, {"kgrid", "64"}});
  o.require(render_csv(a) == render_csv(b), "CSV identical across runs");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_s;  // 0: no runtime limit
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "zero-flux spectrum", 1.0, zero_flux},
      {2, "half-flux closed form", 5.0, half_flux},
      {3, "gauge equivalence", 10.0, gauge},
      {4, "peierls identity", 5.0, peierls},
      {5, "harper/hofstadter duality", 30.0, duality},
      {6, "chern integers", 10.0, chern},
      {7, "continuum landau levels", 0.0, landau_levels},
      {8, "strong-field harper recovery", 120.0, strong_field},
      {9, "effective dynamics", 180.0, dynamics},
      {10, "disorder instruments", 120.0, disorder},
      // The 60 s budget is checked per run inside; the total covers the repeat.
      {11, "butterfly regression", 120.0, butterfly},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0) o.require(elapsed < c.budget_s, "runtime " + num(elapsed) + " s < " + num(c.budget_s) + " s");
    if (!o.passed) ++failed;
    std::printf("%s [%d] %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
