// magspec: command-line front end. Each subcommand resolves a RunConfig from
// defaults, an optional --config file and flags, runs it and writes one table.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "magspec/cli/commands.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kInfeasible = 4 };

}  // namespace

int main(int argc, char** argv) {
  using namespace magspec;
  using namespace magspec::cli;

  CLI::App app{"Magnetic Schroedinger operator spectra and effective models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("magspec ") + kToolVersion);

  struct Bound {
    CLI::App* sub = nullptr;
    std::map<std::string, std::string> values;
    std::string out;
    std::string config;
  };
  std::map<std::string, Bound> bound;
  for (const auto& spec : command_specs()) {
    Bound& b = bound[spec.name];
    b.sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& p : spec.params) {
      std::string help = p.help;
      if (!p.default_value.is_null()) {
        help += " [default: " + (p.default_value.is_string() ? p.default_value.get<std::string>() : p.default_value.dump()) + "]";
      }
      b.sub->add_option(flag_name(p.key), b.values[p.key], help);
    }
    b.sub->add_option("--out", b.out, "output path (stdout when omitted)");
    b.sub->add_option("--config", b.config, "JSON config, or a previous run's CSV or metadata file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    for (auto& [name, b] : bound) {
      if (!b.sub->parsed()) continue;
      const CommandSpec& spec = command_spec(name);
      std::vector<Override> overrides;
      for (const auto& p : spec.params) {
        if (b.sub->count(flag_name(p.key)) > 0) overrides.emplace_back(p.key, b.values.at(p.key));
      }
      std::optional<nlohmann::json> file;
      if (!b.config.empty()) file = load_config_file(b.config);
      const RunConfig cfg = parse_config(name, file, overrides, &std::cerr);

      const RunArtifact artifact = run_command(cfg);
      const std::string format = cfg.text("format");
      if (b.out.empty()) {
        std::cout << (format == "json" ? render_json(artifact) : render_csv(artifact));
      } else {
        write_artifact(artifact, format, b.out);
      }
      for (const auto& c : artifact.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      }
      return exit_code(artifact);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const InfeasibleModel& e) {
    std::cerr << "infeasible model: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NumericalError& e) {
    std::cerr << "numerical check failed: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kConfig;
}
