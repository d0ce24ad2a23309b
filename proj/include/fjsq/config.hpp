#pragma once

// Run configuration: physics defaults, per-figure overrides, selfcheck grid.
// Frequencies are given in Hz (cycles per second) and converted to rad/s here.

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fjsq/analytic.hpp"
#include "fjsq/figures.hpp"
#include "fjsq/spectroscopy.hpp"

namespace fjsq {

inline constexpr int kConfigSchemaVersion = 1;
/// Overrides Config::output_dir when set and non-empty.
inline constexpr const char* kOutputDirEnv = "FJSQ_OUTPUT_DIR";

struct GridOverride {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

struct FigureOverride {
  std::optional<double> nbar0, envelope_tau, Gamma, alpha_i, two_r, per_jump_r, shift_d, squeeze_factor, anchor_d,
      anchor_alpha, bound_states;
  std::optional<GridOverride> grid;
};

struct SelfcheckGrid {
  std::vector<double> r_values{0.0, 0.4, 0.8, 1.2, 1.6};
  std::vector<double> alpha_values{0.0, 0.5, 1.0, 2.0, 3.0};
  std::vector<double> nbar0_values{0.0, 0.22, 0.5};
  int n_max = 20;
  int oracle_dim = 256;   ///< matrix-element and parity oracle
  int moments_dim = 512;  ///< squeezed-thermal moments oracle
};

struct Config {
  TrapParams trap = TrapParams::experiment_defaults();
  RabiParams rabi = RabiParams::experiment_defaults();
  std::map<FigureId, FigureOverride> figure_overrides;
  int fock_dim = kDefaultFockDim;
  double nbar0 = 0.22;  ///< initial thermal occupation for `protocol run`
  std::filesystem::path output_dir = "figures";
  SelfcheckGrid selfcheck;

  /// Default spec for `id` with this configuration's physics and overrides applied.
  FigureSpec figure_spec(FigureId id) const;
};

/// Missing keys keep their defaults; unknown keys and malformed values throw ConfigError.
Config config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const Config& config);
/// Reads and parses a JSON file. Throws ConfigError on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);
Config load_config(const std::filesystem::path& path);

/// --out if given, else $FJSQ_OUTPUT_DIR if non-empty, else config.output_dir.
std::filesystem::path resolve_output_dir(const Config& config, const std::optional<std::filesystem::path>& flag);

}  // namespace fjsq
