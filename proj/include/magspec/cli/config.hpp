#pragma once

// Run configuration: a typed parameter map per subcommand, resolved from an
// optional JSON file plus command-line overrides and validated up front.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magspec/core.hpp"
#include "magspec/flux.hpp"

namespace magspec::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Invalid configuration; maps to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class ParamType {
  Int,
  Real,          // number, or a fraction string such as "1/8"
  OptionalReal,  // Real or null
  Flux,          // reduced "p/q"
  RealList,      // JSON array or comma-separated string
  FluxList,
  Choice,        // one of `choices`
  Bool,
};

struct ParamSpec {
  std::string key;
  ParamType type;
  nlohmann::json default_value;
  std::string help;
  std::vector<std::string> choices{};
  std::optional<double> minimum{};  // inclusive lower bound for numbers
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;

  [[nodiscard]] const ParamSpec* find(const std::string& key) const;
};

/// Every subcommand and its parameters, including the common `format`.
const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(const std::string& name);

/// "kgrid" -> "--kgrid", "gap_tol" -> "--gap-tol".
std::string flag_name(const std::string& key);

struct RunConfig {
  std::string command;
  nlohmann::json params;  // resolved, canonical values for every key

  [[nodiscard]] long long integer(const std::string& key) const;
  [[nodiscard]] double real(const std::string& key) const;
  [[nodiscard]] std::optional<double> optional_real(const std::string& key) const;
  [[nodiscard]] RationalFlux flux(const std::string& key) const;
  [[nodiscard]] std::vector<double> reals(const std::string& key) const;
  [[nodiscard]] std::vector<RationalFlux> fluxes(const std::string& key) const;
  [[nodiscard]] std::string text(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
};

/// A command-line value for `key`, kept as the raw string the user typed.
using Override = std::pair<std::string, std::string>;

/// Resolves defaults, then the file (if any), then the overrides. Overrides
/// that replace a file value are reported on `log`. The file may hold the
/// parameters directly or under a "config" key (as in a run's metadata).
RunConfig parse_config(const std::string& command, const std::optional<nlohmann::json>& file,
                       const std::vector<Override>& overrides, std::ostream* log = nullptr);

/// Reads and parses a JSON config file; a CSV artifact is accepted too, in
/// which case the "# config:" header line is used.
nlohmann::json load_config_file(const std::string& path);

}  // namespace magspec::cli
