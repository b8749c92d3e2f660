#include "magspec/cli/artifact.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace magspec::cli {

using nlohmann::json;

namespace {

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

json checks_json(const RunArtifact& a) {
  json out = json::array();
  for (const auto& c : a.checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

bool RunArtifact::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void RunArtifact::add_row(json row) { rows.push_back(std::move(row)); }

std::string render_csv(const RunArtifact& a) {
  std::ostringstream out;
  out << "# magspec " << kToolVersion << "\n";
  out << "# command: " << a.command << "\n";
  out << "# config: " << a.config.dump() << "\n";
  out << "# summary: " << a.summary.dump() << "\n";
  out << "# checks: " << checks_json(a).dump() << "\n";
  for (std::size_t i = 0; i < a.columns.size(); ++i) out << (i ? "," : "") << a.columns[i];
  out << "\n";
  for (const auto& row : a.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const RunArtifact& a) {
  json doc = {{"version", kToolVersion}, {"command", a.command},   {"config", a.config},
              {"summary", a.summary},    {"checks", checks_json(a)}, {"columns", a.columns},
              {"rows", a.rows}};
  return doc.dump(2) + "\n";
}

json metadata(const RunArtifact& a) {
  return {{"version", kToolVersion}, {"command", a.command},   {"config", a.config},
          {"summary", a.summary},    {"checks", checks_json(a)}, {"wall_time_s", a.wall_time_s}};
}

void write_artifact(const RunArtifact& a, const std::string& format, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path meta(path + ".meta.json");
  const std::string suffix = ".tmp." + std::to_string(::getpid());
  const fs::path target_tmp(path + suffix);
  const fs::path meta_tmp(meta.string() + suffix);

  auto cleanup = [&] {
    std::error_code ec;
    fs::remove(target_tmp, ec);
    fs::remove(meta_tmp, ec);
  };
  try {
    write_file(target_tmp, format == "json" ? render_json(a) : render_csv(a));
    write_file(meta_tmp, metadata(a).dump(2) + "\n");
    fs::rename(target_tmp, target);
    try {
      fs::rename(meta_tmp, meta);
    } catch (...) {
      std::error_code ec;
      fs::remove(target, ec);
      throw;
    }
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace magspec::cli
