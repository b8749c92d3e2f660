#pragma once

// Run artifacts: one table plus metadata, rendered as CSV (with a '#' header)
// or JSON, and written atomically together with a sidecar metadata file.

#include <string>
#include <vector>

#include <json.hpp>

#include "magspec/cli/config.hpp"

namespace magspec::cli {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct RunArtifact {
  std::string command;
  nlohmann::json config;             // resolved parameters
  std::vector<std::string> columns;
  nlohmann::json rows = nlohmann::json::array();  // array of arrays
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Check> checks;
  double wall_time_s = 0.0;

  [[nodiscard]] bool passed() const;
  void add_row(nlohmann::json row);
};

/// Deterministic rendering: no timing information, numbers in shortest
/// round-trip form.
std::string render_csv(const RunArtifact& artifact);
std::string render_json(const RunArtifact& artifact);
/// Sidecar metadata, including the wall time.
nlohmann::json metadata(const RunArtifact& artifact);

/// Writes `path` and `path.meta.json` through temporary files and renames.
/// On failure neither file is left behind.
void write_artifact(const RunArtifact& artifact, const std::string& format, const std::string& path);

}  // namespace magspec::cli
