#include <set>
#include <string>

#include "fjsq/errors.hpp"
#include "fjsq/protocol.hpp"

namespace fjsq {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

ProtocolStep step_from_json(const json& s, const std::string& where) {
  if (!s.is_object() || !s.contains("type") || !s.at("type").is_string())
    throw ConfigError(where + ": step must be an object with a string 'type'");
  const auto type = s.at("type").get<std::string>();
  if (type == "jump") {
    reject_unknown(s, {"type", "omega_new_hz"}, where);
    return FrequencyJump{Frequency::hz(number(s, "omega_new_hz", where))};
  }
  if (type == "wait") {
    reject_unknown(s, {"type", "tau_s"}, where);
    return Wait{number(s, "tau_s", where)};
  }
  if (type == "shift") {
    reject_unknown(s, {"type", "d_m"}, where);
    return ShiftOrigin{number(s, "d_m", where)};
  }
  if (type == "unshift") {
    reject_unknown(s, {"type"}, where);
    return UnshiftOrigin{};
  }
  throw ConfigError(where + ": unknown step type '" + type + "'");
}

json step_to_json(const ProtocolStep& step) {
  if (const auto* j = std::get_if<FrequencyJump>(&step)) return {{"type", "jump"}, {"omega_new_hz", j->target.in_hz()}};
  if (const auto* w = std::get_if<Wait>(&step)) return {{"type", "wait"}, {"tau_s", w->tau}};
  if (const auto* s = std::get_if<ShiftOrigin>(&step)) return {{"type", "shift"}, {"d_m", s->d}};
  return {{"type", "unshift"}};
}

}  // namespace

json protocol_to_json(const Protocol& protocol) {
  json steps = json::array();
  for (const auto& s : protocol.steps) steps.push_back(step_to_json(s));
  return {{"schema_version", kProtocolSchemaVersion},
          {"omega_initial_hz", protocol.omega_initial.in_hz()},
          {"mass_kg", protocol.mass},
          {"calibration", protocol.calibration},
          {"steps", std::move(steps)}};
}

Protocol protocol_from_json(const json& doc, const TrapParams& params) {
  const std::string where = "protocol";
  if (!doc.is_object()) throw ConfigError(where + ": document must be a JSON object");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw ConfigError(where + ": missing integer 'schema_version'");
  if (doc.at("schema_version").get<int>() != kProtocolSchemaVersion)
    throw ConfigError(where + ": unsupported schema_version " + doc.at("schema_version").dump());

  if (doc.contains("builtin")) {
    reject_unknown(doc, {"schema_version", "builtin", "n_jumps", "alpha_i"}, where);
    if (!doc.at("builtin").is_string()) throw ConfigError(where + ": 'builtin' must be a string");
    BuiltinOptions options;
    if (doc.contains("n_jumps")) {
      if (!doc.at("n_jumps").is_number_integer()) throw ConfigError(where + ": 'n_jumps' must be an integer");
      options.n_jumps = doc.at("n_jumps").get<int>();
    }
    if (doc.contains("alpha_i")) options.alpha_i = number(doc, "alpha_i", where);
    try {
      return builtin_protocol(parse_builtin(doc.at("builtin").get<std::string>()), params, options);
    } catch (const DomainError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }

  reject_unknown(doc, {"schema_version", "omega_initial_hz", "mass_kg", "calibration", "steps"}, where);
  Protocol p;
  p.omega_initial = Frequency::hz(number(doc, "omega_initial_hz", where));
  p.mass = doc.contains("mass_kg") ? number(doc, "mass_kg", where) : params.mass;
  p.calibration = doc.contains("calibration") ? number(doc, "calibration", where) : params.calibration;
  if (!doc.contains("steps") || !doc.at("steps").is_array()) throw ConfigError(where + ": 'steps' must be an array");
  const json& steps = doc.at("steps");
  for (std::size_t i = 0; i < steps.size(); ++i)
    p.steps.push_back(step_from_json(steps[i], where + ".steps[" + std::to_string(i) + "]"));
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return p;
}

}  // namespace fjsq
