#include "fjsq/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"

namespace fjsq {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": must be a JSON object");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

void read(const json& obj, const char* key, double& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": must be a number");
  out = v.get<double>();
}

void read(const json& obj, const char* key, int& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": must be an integer");
  out = v.get<int>();
}

void read(const json& obj, const char* key, std::optional<double>& out, const std::string& where) {
  if (!obj.contains(key)) return;
  double value = 0.0;
  read(obj, key, value, where);
  out = value;
}

void read(const json& obj, const char* key, std::vector<double>& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + "." + key + ": must be a non-empty array of numbers");
  out.clear();
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": must be a non-empty array of numbers");
    out.push_back(x.get<double>());
  }
}

void read_hz(const json& obj, const char* key, double& angular, const std::string& where) {
  double hz = angular / constants::kTwoPi;
  read(obj, key, hz, where);
  angular = constants::angular(hz);
}

void read_trap(const json& j, TrapParams& t) {
  const std::string where = "trap";
  require_object(j, where);
  reject_unknown(j,
                 {"omega1_hz", "omega2_hz", "mass_kg", "lattice_wavenumber_per_m", "V0_hz", "recoil_hz",
                  "calibration"},
                 where);
  read_hz(j, "omega1_hz", t.omega1, where);
  read_hz(j, "omega2_hz", t.omega2, where);
  read(j, "mass_kg", t.mass, where);
  read(j, "lattice_wavenumber_per_m", t.lattice_wavenumber, where);
  double v0_hz = constants::hz_from_energy(t.V0);
  read(j, "V0_hz", v0_hz, where);
  t.V0 = constants::energy_from_hz(v0_hz);
  if (j.contains("recoil_hz")) {
    if (j.at("recoil_hz").is_null()) {
      t.recoil_override.reset();
    } else {
      double hz = 0.0;
      read(j, "recoil_hz", hz, where);
      t.recoil_override = constants::energy_from_hz(hz);
    }
  }
  read(j, "calibration", t.calibration, where);
}

void read_rabi(const json& j, RabiParams& r) {
  const std::string where = "rabi";
  require_object(j, where);
  reject_unknown(j, {"omega01_hz", "gamma_per_s", "pulse_s", "n_max"}, where);
  read_hz(j, "omega01_hz", r.omega01, where);
  read(j, "gamma_per_s", r.gamma, where);
  read(j, "pulse_s", r.pulse_t, where);
  read(j, "n_max", r.n_max, where);
}

FigureOverride read_override(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j,
                 {"nbar0", "envelope_tau_s", "Gamma_s", "alpha_i", "two_r", "per_jump_r", "shift_d_m",
                  "squeeze_factor", "anchor_d_m", "anchor_alpha", "bound_states", "grid"},
                 where);
  FigureOverride o;
  read(j, "nbar0", o.nbar0, where);
  read(j, "envelope_tau_s", o.envelope_tau, where);
  read(j, "Gamma_s", o.Gamma, where);
  read(j, "alpha_i", o.alpha_i, where);
  read(j, "two_r", o.two_r, where);
  read(j, "per_jump_r", o.per_jump_r, where);
  read(j, "shift_d_m", o.shift_d, where);
  read(j, "squeeze_factor", o.squeeze_factor, where);
  read(j, "anchor_d_m", o.anchor_d, where);
  read(j, "anchor_alpha", o.anchor_alpha, where);
  read(j, "bound_states", o.bound_states, where);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    const std::string gw = where + ".grid";
    require_object(g, gw);
    reject_unknown(g, {"start", "stop", "step"}, gw);
    for (const char* key : {"start", "stop", "step"})
      if (!g.contains(key)) throw ConfigError(gw + ": missing '" + key + "'");
    GridOverride grid;
    read(g, "start", grid.start, gw);
    read(g, "stop", grid.stop, gw);
    read(g, "step", grid.step, gw);
    if (!(grid.step > 0.0) || !(grid.stop >= grid.start))
      throw ConfigError(gw + ": need step > 0 and stop >= start");
    o.grid = grid;
  }
  return o;
}

void read_selfcheck(const json& j, SelfcheckGrid& s) {
  const std::string where = "selfcheck";
  require_object(j, where);
  reject_unknown(j, {"r_values", "alpha_values", "nbar0_values", "n_max", "oracle_dim", "moments_dim"}, where);
  read(j, "r_values", s.r_values, where);
  read(j, "alpha_values", s.alpha_values, where);
  read(j, "nbar0_values", s.nbar0_values, where);
  read(j, "n_max", s.n_max, where);
  read(j, "oracle_dim", s.oracle_dim, where);
  read(j, "moments_dim", s.moments_dim, where);
  if (s.n_max < 0 || s.n_max > 60) throw ConfigError(where + ".n_max: must lie in [0, 60]");
  if (s.oracle_dim <= s.n_max + 8 || s.moments_dim < 16) throw ConfigError(where + ": oracle dimensions too small");
}

json override_to_json(const FigureOverride& o) {
  json j = json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("nbar0", o.nbar0);
  put("envelope_tau_s", o.envelope_tau);
  put("Gamma_s", o.Gamma);
  put("alpha_i", o.alpha_i);
  put("two_r", o.two_r);
  put("per_jump_r", o.per_jump_r);
  put("shift_d_m", o.shift_d);
  put("squeeze_factor", o.squeeze_factor);
  put("anchor_d_m", o.anchor_d);
  put("anchor_alpha", o.anchor_alpha);
  put("bound_states", o.bound_states);
  if (o.grid) j["grid"] = {{"start", o.grid->start}, {"stop", o.grid->stop}, {"step", o.grid->step}};
  return j;
}

}  // namespace

FigureSpec Config::figure_spec(FigureId id) const {
  FigureSpec spec = default_figure_spec(id, trap, rabi);
  spec.fock_dim = fock_dim;
  const auto it = figure_overrides.find(id);
  if (it == figure_overrides.end()) return spec;
  const FigureOverride& o = it->second;
  FigureConstants& c = spec.constants;
  auto apply = [](double& target, const std::optional<double>& v) {
    if (v) target = *v;
  };
  apply(c.nbar0, o.nbar0);
  apply(c.envelope_tau, o.envelope_tau);
  apply(c.Gamma, o.Gamma);
  apply(c.alpha_i, o.alpha_i);
  apply(c.two_r, o.two_r);
  apply(c.per_jump_r, o.per_jump_r);
  apply(c.shift_d, o.shift_d);
  apply(c.squeeze_factor, o.squeeze_factor);
  apply(c.anchor_d, o.anchor_d);
  apply(c.anchor_alpha, o.anchor_alpha);
  apply(c.bound_states, o.bound_states);
  if (o.grid) spec.sweep = linear_grid(o.grid->start, o.grid->stop, o.grid->step);
  return spec;
}

Config config_from_json(const json& doc) {
  require_object(doc, "config");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw ConfigError("config: missing integer 'schema_version'");
  if (doc.at("schema_version").get<int>() != kConfigSchemaVersion)
    throw ConfigError("config: unsupported schema_version " + doc.at("schema_version").dump());
  reject_unknown(doc,
                 {"schema_version", "trap", "rabi", "figure_overrides", "fock_dim", "nbar0", "output_dir",
                  "selfcheck"},
                 "config");
  Config c;
  if (doc.contains("trap")) read_trap(doc.at("trap"), c.trap);
  if (doc.contains("rabi")) read_rabi(doc.at("rabi"), c.rabi);
  if (doc.contains("figure_overrides")) {
    const json& f = doc.at("figure_overrides");
    require_object(f, "figure_overrides");
    for (const auto& [name, value] : f.items()) {
      FigureId id{};
      try {
        id = parse_figure(name);
      } catch (const DomainError&) {
        throw ConfigError("figure_overrides: unknown figure '" + name + "'");
      }
      c.figure_overrides[id] = read_override(value, "figure_overrides." + name);
    }
  }
  read(doc, "fock_dim", c.fock_dim, "config");
  read(doc, "nbar0", c.nbar0, "config");
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw ConfigError("config.output_dir: must be a string");
    c.output_dir = doc.at("output_dir").get<std::string>();
  }
  if (doc.contains("selfcheck")) read_selfcheck(doc.at("selfcheck"), c.selfcheck);

  if (c.fock_dim < 2 * kGuardBand) throw ConfigError("config.fock_dim: must be at least 16");
  if (!(c.nbar0 >= 0.0)) throw ConfigError("config.nbar0: must be >= 0");
  try {
    c.trap.validate();
    c.rabi.validate();
    for (const auto& [id, o] : c.figure_overrides) c.figure_spec(id).validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

json config_to_json(const Config& c) {
  json trap = {{"omega1_hz", c.trap.omega1 / constants::kTwoPi},
               {"omega2_hz", c.trap.omega2 / constants::kTwoPi},
               {"mass_kg", c.trap.mass},
               {"lattice_wavenumber_per_m", c.trap.lattice_wavenumber},
               {"V0_hz", constants::hz_from_energy(c.trap.V0)},
               {"recoil_hz", c.trap.recoil_override ? json(constants::hz_from_energy(*c.trap.recoil_override)) : json()},
               {"calibration", c.trap.calibration}};
  json rabi = {{"omega01_hz", c.rabi.omega01 / constants::kTwoPi},
               {"gamma_per_s", c.rabi.gamma},
               {"pulse_s", c.rabi.pulse_t},
               {"n_max", c.rabi.n_max}};
  json overrides = json::object();
  for (const auto& [id, o] : c.figure_overrides) overrides[std::string(figure_name(id))] = override_to_json(o);
  json selfcheck = {{"r_values", c.selfcheck.r_values},       {"alpha_values", c.selfcheck.alpha_values},
                    {"nbar0_values", c.selfcheck.nbar0_values}, {"n_max", c.selfcheck.n_max},
                    {"oracle_dim", c.selfcheck.oracle_dim},     {"moments_dim", c.selfcheck.moments_dim}};
  return {{"schema_version", kConfigSchemaVersion},
          {"trap", trap},
          {"rabi", rabi},
          {"figure_overrides", overrides},
          {"fock_dim", c.fock_dim},
          {"nbar0", c.nbar0},
          {"output_dir", c.output_dir.string()},
          {"selfcheck", selfcheck}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Config load_config(const std::filesystem::path& path) { return config_from_json(read_json_file(path)); }

std::filesystem::path resolve_output_dir(const Config& config, const std::optional<std::filesystem::path>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return config.output_dir;
}

}  // namespace fjsq
