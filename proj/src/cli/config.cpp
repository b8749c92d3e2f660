#include "magspec/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace magspec::cli {

using nlohmann::json;

namespace {

ParamSpec integer(std::string key, long long def, std::string help, std::optional<double> min = std::nullopt) {
  return {std::move(key), ParamType::Int, def, std::move(help), {}, min};
}
ParamSpec real(std::string key, double def, std::string help, std::optional<double> min = std::nullopt) {
  return {std::move(key), ParamType::Real, def, std::move(help), {}, min};
}
ParamSpec choice(std::string key, std::vector<std::string> choices, std::string help) {
  std::string def = choices.front();
  return {std::move(key), ParamType::Choice, def, std::move(help), std::move(choices)};
}

std::vector<ParamSpec> strong_field_params(json B_default) {
  return {
      {"B", ParamType::RealList, std::move(B_default), "field parameters, snapped to the nearest feasible value"},
      integer("cells", 4, "unit cells in the magnetic torus", 1),
      integer("n_ll", 8, "Landau levels kept", 1),
      choice("potential", {"cosine", "zero"}, "periodic potential"),
      real("amplitude", 2.0, "potential amplitude; cosine means amplitude*(cos 2pi x + cos 2pi y)"),
      real("min_gap", 1.0, "minimum gap above the lowest cluster", 0.0),
      choice("cell", {"unit", "2pi"}, "potential period: unit cell of side 1 or 2pi"),
  };
}

std::vector<CommandSpec> build_specs() {
  std::vector<CommandSpec> specs = {
      {"butterfly",
       "band edges and eigenvalue quantiles for every reduced flux p/q with q <= qmax",
       {integer("qmax", 20, "largest denominator", 1), integer("kgrid", 64, "k points per direction", 1)}},
      {"fiber-spectrum",
       "Hofstadter spectrum as a union of band intervals",
       {{"flux", ParamType::Flux, "0/1", "flux per plaquette p/q"},
        integer("kgrid", 64, "k points per direction", 1),
        {"gap_tol", ParamType::OptionalReal, nullptr, "bands closer than this merge [default: 1e-9]"}}},
      {"harper-spectrum",
       "union of Harper fiber spectra compared with the Hofstadter spectrum",
       {{"flux", ParamType::Flux, "1/3", "frequency p/q"},
        integer("kgrid", 64, "points per parameter (theta and k)", 1),
        {"gap_tol", ParamType::OptionalReal, nullptr, "bands closer than this merge [default: 1e-9]"},
        real("tol", 1e-2, "Hausdorff tolerance", 0.0)}},
      {"peierls-check",
       "Peierls quantization of 2cos k1 + 2cos k2 against the Hofstadter fiber",
       {{"flux", ParamType::FluxList, json::array({"1/3", "2/5"}), "fluxes p/q"},
        integer("kgrid", 16, "k points per direction", 1),
        real("tol", 1e-10, "eigenvalue tolerance", 0.0)}},
      {"gauge-check",
       "symmetric-gauge torus spectrum against Landau-gauge fibers at flux 2B",
       {real("B", 0.125, "field parameter; plaquette flux is 2B"),
        integer("L", 16, "torus side", 3),
        integer("kgrid", 0, "fiber grid; 0 uses the torus-commensurate grid L", 0),
        {"gap_tol", ParamType::OptionalReal, nullptr, "merge tolerance for eigenvalue sets [default: 10x median spacing]"},
        real("tol", 0.05, "Hausdorff tolerance", 0.0)}},
      {"chern",
       "Chern numbers of the Hofstadter bands",
       {{"flux", ParamType::Flux, "1/3", "flux p/q"}, integer("kgrid", 30, "grid points per zone direction", 2)}},
      {"continuum-spectrum",
       "spectrum of the Landau Hamiltonian with a periodic potential on a magnetic torus",
       {real("B", 10.0, "field parameter (levels at 2B(2n+1))", 0.0),
        integer("cells", 4, "unit cells in the torus", 1),
        integer("n_ll", 6, "Landau levels kept", 1),
        choice("potential", {"cosine", "zero"}, "periodic potential"),
        real("amplitude", 2.0, "potential amplitude"),
        {"snap_B", ParamType::Bool, true, "use the nearest feasible B instead of failing"},
        real("disorder_W", 0.0, "strength of an added smooth random potential", 0.0),
        integer("seed", 0, "disorder seed", 0),
        choice("disorder_scale", {"slow", "fast"}, "lambda = B (slow) or 1/B (fast)"),
        integer("disorder_coarse", 8, "coarse random grid side", 1),
        real("disorder_bump", 1.0, "bump width on the coarse grid", 0.0),
        integer("disorder_cutoff", 2, "Fourier cutoff per direction", 0),
        choice("cell", {"unit", "2pi"}, "potential period: unit cell of side 1 or 2pi")}},
      {"lll-compare",
       "lowest cluster of the continuum model against the lowest-Landau-level effective model",
       strong_field_params(json::array({10.0, 20.0, 40.0}))},
      {"dynamics-defect",
       "propagation defect between full and effective dynamics",
       strong_field_params(json::array({10.0, 20.0, 40.0}))},
      {"disorder-dos",
       "disorder-averaged density of states of the Hofstadter torus",
       {{"flux", ParamType::Flux, "1/3", "plaquette flux p/q"},
        integer("L", 30, "torus side", 3),
        {"W", ParamType::RealList, json::array({0.0, 0.5, 1.0, 2.0}), "disorder strengths"},
        integer("realizations", 20, "realizations per strength", 1),
        integer("seed", 1000, "base seed; realization i uses seed + i", 0),
        choice("distribution", {"uniform", "gaussian"}, "coupling distribution (W is the width or sigma)"),
        choice("potential", {"anderson", "scaled"}, "iid site couplings or a smooth scaled field"),
        choice("profile", {"onsite", "gaussian"}, "bump shape for anderson couplings"),
        real("bump_width", 1.0, "gaussian bump width", 0.0),
        choice("scale", {"slow", "fast"}, "scaled field: lambda = B (slow) or 1/B (fast)"),
        integer("coarse", 8, "coarse grid side of the scaled field", 1),
        real("width", 0.02, "Gaussian smoothing width", 0.0),
        integer("bins", 1000, "histogram bins", 1),
        real("lo", -4.0, "histogram lower edge"),
        real("hi", 4.0, "histogram upper edge"),
        {"gap_tol", ParamType::OptionalReal, nullptr, "clean bands closer than this merge [default: 1e-9]"}}},
  };
  auto& dyn = std::find_if(specs.begin(), specs.end(), [](const CommandSpec& c) {
                return c.name == "dynamics-defect";
              })->params;
  dyn.push_back(real("t_max", 5.0, "last time", 0.0));
  dyn.push_back(real("dt", 0.5, "time step", 0.0));
  dyn.push_back(integer("seed", 7, "initial-state seed", 0));
  for (auto& s : specs) s.params.push_back(choice("format", {"csv", "json"}, "output format"));
  return specs;
}

std::string describe(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

double parse_real_text(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument("numerator");
      const std::string den_text = text.substr(slash + 1);
      const double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0.0) throw std::invalid_argument("denominator");
      return num / den;
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError(key + ": expected a number or fraction, got '" + text + "'");
  }
}

double to_real(const std::string& key, const json& v) {
  double out = 0.0;
  if (v.is_number()) {
    out = v.get<double>();
  } else if (v.is_string()) {
    out = parse_real_text(key, v.get<std::string>());
  } else {
    throw ConfigError(key + ": expected a number, got " + v.dump());
  }
  if (!std::isfinite(out)) throw ConfigError(key + ": value must be finite");
  return out;
}

std::string to_flux(const std::string& key, const json& v) {
  if (!v.is_string()) throw ConfigError(key + ": expected a flux string p/q, got " + v.dump());
  try {
    return RationalFlux::parse(v.get<std::string>()).to_string();
  } catch (const InvalidArgument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

std::vector<json> split_list(const json& v) {
  std::vector<json> items;
  if (v.is_array()) {
    for (const auto& x : v) items.push_back(x);
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      items.emplace_back(item);
    }
  } else {
    items.push_back(v);
  }
  return items;
}

json canonical(const ParamSpec& spec, const json& v) {
  const std::string& key = spec.key;
  auto check_min = [&](double x) {
    if (spec.minimum && x < *spec.minimum) {
      throw ConfigError(key + ": must be >= " + json(*spec.minimum).dump() + ", got " + json(x).dump());
    }
  };
  switch (spec.type) {
    case ParamType::Int: {
      long long n = 0;
      if (v.is_number_integer()) {
        n = v.get<long long>();
      } else if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t used = 0;
        try {
          n = std::stoll(s, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != s.size()) throw ConfigError(key + ": expected an integer, got '" + s + "'");
      } else {
        throw ConfigError(key + ": expected an integer, got " + v.dump());
      }
      check_min(static_cast<double>(n));
      return n;
    }
    case ParamType::Real: {
      const double x = to_real(key, v);
      check_min(x);
      return x;
    }
    case ParamType::OptionalReal: {
      if (v.is_null() || (v.is_string() && (v == "" || v == "auto"))) return nullptr;
      const double x = to_real(key, v);
      if (x <= 0.0) throw ConfigError(key + ": must be > 0");
      return x;
    }
    case ParamType::Flux:
      return to_flux(key, v);
    case ParamType::RealList: {
      json out = json::array();
      for (const auto& item : split_list(v)) {
        const double x = to_real(key, item);
        check_min(x);
        out.push_back(x);
      }
      if (out.empty()) throw ConfigError(key + ": list is empty");
      return out;
    }
    case ParamType::FluxList: {
      json out = json::array();
      for (const auto& item : split_list(v)) out.push_back(to_flux(key, item));
      if (out.empty()) throw ConfigError(key + ": list is empty");
      return out;
    }
    case ParamType::Choice: {
      if (!v.is_string()) throw ConfigError(key + ": expected a string, got " + v.dump());
      const std::string s = v.get<std::string>();
      if (std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
        std::string allowed;
        for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : "|") + c;
        throw ConfigError(key + ": '" + s + "' is not one of " + allowed);
      }
      return s;
    }
    case ParamType::Bool: {
      if (v.is_boolean()) return v;
      if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
      }
      throw ConfigError(key + ": expected true or false, got " + v.dump());
    }
  }
  throw ConfigError(key + ": unsupported parameter type");
}

}  // namespace

const ParamSpec* CommandSpec::find(const std::string& key) const {
  for (const auto& p : params) {
    if (p.key == key) return &p;
  }
  return nullptr;
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = build_specs();
  return specs;
}

const CommandSpec& command_spec(const std::string& name) {
  for (const auto& s : command_specs()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

RunConfig parse_config(const std::string& command, const std::optional<json>& file,
                       const std::vector<Override>& overrides, std::ostream* log) {
  const CommandSpec& spec = command_spec(command);
  RunConfig cfg;
  cfg.command = command;
  cfg.params = json::object();
  for (const auto& p : spec.params) cfg.params[p.key] = canonical(p, p.default_value);

  std::map<std::string, json> from_file;
  if (file) {
    json body = *file;
    if (!body.is_object()) throw ConfigError("config file must hold a JSON object");
    if (body.contains("config")) {
      if (body.contains("command") && body["command"] != command) {
        throw ConfigError("config was written for command '" + describe(body["command"]) + "', not '" + command + "'");
      }
      body = body["config"];
      if (!body.is_object()) throw ConfigError("\"config\" must be a JSON object");
    }
    for (const auto& [key, value] : body.items()) {
      const ParamSpec* p = spec.find(key);
      if (p == nullptr) throw ConfigError("unknown key '" + key + "' for command " + command);
      cfg.params[key] = canonical(*p, value);
      from_file[key] = cfg.params[key];
    }
  }

  for (const auto& [key, text] : overrides) {
    const ParamSpec* p = spec.find(key);
    if (p == nullptr) throw ConfigError("unknown option " + flag_name(key) + " for command " + command);
    json value = canonical(*p, json(text));
    if (log != nullptr) {
      if (auto it = from_file.find(key); it != from_file.end() && it->second != value) {
        *log << "note: " << flag_name(key) << " = " << describe(value) << " overrides config file value "
             << describe(it->second) << "\n";
      }
    }
    cfg.params[key] = std::move(value);
  }
  return cfg;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const std::string marker = "# config: ";
  if (text.rfind("# ", 0) == 0) {
    std::stringstream lines(text);
    std::string line;
    std::optional<std::string> command;
    while (std::getline(lines, line) && line.rfind("#", 0) == 0) {
      if (line.rfind("# command: ", 0) == 0) command = line.substr(11);
      if (line.rfind(marker, 0) == 0) {
        json out = {{"config", json::parse(line.substr(marker.size()), nullptr, false)}};
        if (out["config"].is_discarded()) throw ConfigError("malformed config header in '" + path + "'");
        if (command) out["command"] = *command;
        return out;
      }
    }
    throw ConfigError("'" + path + "' has no config header");
  }
  json out = json::parse(text, nullptr, false);
  if (out.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
  return out;
}

long long RunConfig::integer(const std::string& key) const { return params.at(key).get<long long>(); }
double RunConfig::real(const std::string& key) const { return params.at(key).get<double>(); }
std::optional<double> RunConfig::optional_real(const std::string& key) const {
  const auto& v = params.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}
RationalFlux RunConfig::flux(const std::string& key) const {
  return RationalFlux::parse(params.at(key).get<std::string>());
}
std::vector<double> RunConfig::reals(const std::string& key) const {
  return params.at(key).get<std::vector<double>>();
}
std::vector<RationalFlux> RunConfig::fluxes(const std::string& key) const {
  std::vector<RationalFlux> out;
  for (const auto& v : params.at(key)) out.push_back(RationalFlux::parse(v.get<std::string>()));
  return out;
}
std::string RunConfig::text(const std::string& key) const { return params.at(key).get<std::string>(); }
bool RunConfig::flag(const std::string& key) const { return params.at(key).get<bool>(); }

}  // namespace magspec::cli
