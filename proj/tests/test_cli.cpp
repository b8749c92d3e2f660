#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "magspec/cli/commands.hpp"

using namespace magspec;
using namespace magspec::cli;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("magspec_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("defaults for butterfly") {
  const RunConfig cfg = parse_config("butterfly", std::nullopt, {});
  CHECK(cfg.integer("qmax") == 20);
  CHECK(cfg.integer("kgrid") == 64);
  CHECK(cfg.text("format") == "csv");
}

TEST_CASE("every command resolves its defaults") {
  for (const auto& spec : command_specs()) {
    const RunConfig cfg = parse_config(spec.name, std::nullopt, {});
    CHECK(cfg.params.size() == spec.params.size());
  }
  CHECK_THROWS_AS(parse_config("no-such-command", std::nullopt, {}), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_WITH_AS(parse_config("chern", std::nullopt, {{"flux", "3/6"}}), doctest::Contains("not reduced"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config("chern", json{{"fluxx", "1/3"}}, {}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", json{{"kgrid", "many"}}, {}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", json{{"kgrid", 1.5}}, {}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", std::nullopt, {{"kgrid", "1"}}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", std::nullopt, {{"format", "xml"}}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", std::nullopt, {{"unknown", "1"}}), ConfigError);
  CHECK_THROWS_AS(parse_config("gauge-check", std::nullopt, {{"B", "1/0"}}), ConfigError);
  CHECK_THROWS_AS(parse_config("chern", json::array(), {}), ConfigError);
}

TEST_CASE("typed values") {
  const RunConfig g = parse_config("gauge-check", std::nullopt, {{"B", "1/8"}});
  CHECK(g.real("B") == 0.125);
  CHECK_FALSE(g.optional_real("gap_tol").has_value());
  const RunConfig d = parse_config("dynamics-defect", json{{"B", json::array({10, 20})}}, {});
  CHECK(d.reals("B") == std::vector<double>{10.0, 20.0});
  const RunConfig l = parse_config("lll-compare", std::nullopt, {{"B", "10, 20,40"}});
  CHECK(l.reals("B") == std::vector<double>{10.0, 20.0, 40.0});
  const RunConfig p = parse_config("peierls-check", std::nullopt, {{"flux", "1/3,2/5,3/7"}});
  CHECK(p.fluxes("flux").size() == 3);
  const RunConfig c = parse_config("continuum-spectrum", std::nullopt, {{"snap_B", "false"}});
  CHECK_FALSE(c.flag("snap_B"));
}

TEST_CASE("flag wins over file and the override is logged") {
  std::ostringstream log;
  const RunConfig cfg = parse_config("chern", json{{"kgrid", 40}, {"flux", "2/5"}}, {{"kgrid", "60"}}, &log);
  CHECK(cfg.integer("kgrid") == 60);
  CHECK(cfg.flux("flux") == RationalFlux(2, 5));
  CHECK(log.str().find("--kgrid") != std::string::npos);
  CHECK(log.str().find("40") != std::string::npos);
}

TEST_CASE("metadata wrapper and command mismatch") {
  const json wrapped = {{"command", "chern"}, {"config", {{"flux", "1/5"}}}};
  CHECK(parse_config("chern", wrapped, {}).flux("flux") == RationalFlux(1, 5));
  CHECK_THROWS_AS(parse_config("butterfly", wrapped, {}), ConfigError);
}

TEST_CASE("replaying an artifact's config reproduces it bit for bit") {
  const fs::path dir = scratch_dir("replay");
  const RunConfig cfg = parse_config("fiber-spectrum", std::nullopt, {{"flux", "2/7"}, {"kgrid", "24"}});
  const RunArtifact first = run_command(cfg);
  write_artifact(first, "csv", (dir / "a.csv").string());

  for (const auto& source : {dir / "a.csv", dir / "a.csv.meta.json"}) {
    const RunConfig replay = parse_config("fiber-spectrum", load_config_file(source.string()), {});
    CHECK(replay.params == cfg.params);
    write_artifact(run_command(replay), "csv", (dir / "b.csv").string());
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  }
  const json meta = json::parse(slurp(dir / "a.csv.meta.json"));
  CHECK(meta.contains("wall_time_s"));
  CHECK(meta["config"] == cfg.params);
  CHECK(slurp(dir / "a.csv").find("wall") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("json rendering") {
  const RunArtifact a = run_command(parse_config("chern", std::nullopt, {}));
  const json doc = json::parse(render_json(a));
  CHECK(doc["columns"] == json::array({"band_index", "chern", "raw"}));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][1][1] == -2);
  CHECK(a.passed());
  CHECK(exit_code(a) == 0);
}

TEST_CASE("writes are atomic") {
  const fs::path dir = scratch_dir("atomic");
  const RunArtifact a = run_command(parse_config("chern", std::nullopt, {}));
  const fs::path missing = dir / "no_such_dir" / "out.csv";
  CHECK_THROWS(write_artifact(a, "csv", missing.string()));
  CHECK_FALSE(fs::exists(missing));

  // A failing metadata write leaves neither file behind: the sidecar path is
  // occupied by a directory.
  const fs::path target = dir / "out.csv";
  fs::create_directories(dir / "out.csv.meta.json" / "blocker");
  CHECK_THROWS(write_artifact(a, "csv", target.string()));
  CHECK_FALSE(fs::exists(target));
  for (const auto& entry : fs::directory_iterator(dir)) {
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("butterfly golden file") {
  const RunConfig cfg = parse_config("butterfly", std::nullopt, {{"qmax", "5"}, {"kgrid", "8"}});
  const std::string csv = render_csv(run_command(cfg));
  const std::string golden = slurp(fs::path(MAGSPEC_SOURCE_DIR) / "tests" / "golden" / "butterfly_q5_k8.csv");
  REQUIRE_FALSE(golden.empty());
  CHECK(csv == golden);
}

TEST_CASE("butterfly rows cover every reduced flux with q bands each") {
  const RunArtifact a = run_command(parse_config("butterfly", std::nullopt, {{"qmax", "6"}, {"kgrid", "8"}}));
  std::map<std::pair<long, long>, int> bands;
  for (const auto& row : a.rows) bands[{row[0].get<long>(), row[1].get<long>()}]++;
  long fluxes = 0;
  for (long q = 1; q <= 6; ++q) {
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++fluxes;
      CHECK(bands[{p, q}] == q);
    }
  }
  CHECK(static_cast<long>(bands.size()) == fluxes);
  CHECK(a.passed());
}

TEST_CASE("numerical verdicts become failed checks") {
  const RunArtifact a = run_command(parse_config("gauge-check", std::nullopt, {{"tol", "0"}}));
  CHECK_FALSE(a.passed());
  CHECK(exit_code(a) == 3);
}

TEST_CASE("module errors propagate with their type") {
  CHECK_THROWS_AS(run_command(parse_config("chern", std::nullopt, {{"flux", "1/2"}})), NumericalError);
  CHECK_THROWS_AS(run_command(parse_config("continuum-spectrum", std::nullopt, {{"snap_B", "false"}})), InfeasibleModel);
  CHECK_THROWS_AS(run_command(parse_config("gauge-check", std::nullopt, {{"B", "0.01"}})), InfeasibleModel);
}

TEST_CASE("cell flag switches the potential period to 2pi") {
  const double two_pi = 2.0 * std::acos(-1.0);
  const RunArtifact unit = run_command(parse_config("continuum-spectrum", std::nullopt, {{"B", "2"}, {"cells", "1"}}));
  CHECK(unit.summary.at("cell_length").get<double>() == 1.0);

  // Flux quanta through a 2pi x 2pi cell: b * area / (2 pi) = 2 B pi.
  const RunArtifact wide = run_command(
      parse_config("continuum-spectrum", std::nullopt, {{"B", "0.5"}, {"cells", "1"}, {"cell", "2pi"}, {"potential", "zero"}}));
  CHECK(wide.summary.at("cell_length").get<double>() == doctest::Approx(two_pi));
  const double B = wide.summary.at("B").get<double>();
  const long n_phi = wide.summary.at("n_phi").get<long>();
  CHECK(2.0 * B * two_pi == doctest::Approx(static_cast<double>(n_phi)).epsilon(1e-12));
  CHECK(wide.passed());

  CHECK_THROWS_AS(parse_config("lll-compare", std::nullopt, {{"cell", "pi"}}), ConfigError);
}

TEST_CASE("hausdorff summaries report the grid spacing") {
  const RunArtifact a = run_command(parse_config("harper-spectrum", std::nullopt, {{"kgrid", "16"}}));
  const json& grid = a.summary.at("grid");
  CHECK(grid.at("kgrid").get<int>() == 16);
  CHECK(grid.at("grid_spacing").get<double>() == doctest::Approx(2.0 * std::acos(-1.0) / 16));
  CHECK(grid.at("resolution").get<double>() == doctest::Approx(2.0 * grid.at("grid_spacing").get<double>()));
  CHECK(a.summary.contains("tol"));
}
