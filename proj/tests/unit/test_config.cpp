#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fjsq/config.hpp"
#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"

using namespace fjsq;
using nlohmann::json;

namespace {

json minimal() { return {{"schema_version", kConfigSchemaVersion}}; }

}  // namespace

TEST(Defaults, ReproducePhysicalConstants) {
  const Config c = config_from_json(minimal());
  EXPECT_NEAR(c.trap.omega1, constants::angular(93e3), 1e-6);
  EXPECT_NEAR(c.trap.omega2, constants::angular(23e3), 1e-6);
  EXPECT_NEAR(c.rabi.omega01, constants::angular(5.4e3), 1e-9);
  EXPECT_EQ(c.rabi.gamma, 9.8e3);
  EXPECT_EQ(c.rabi.pulse_t, 0.4e-3);
  EXPECT_EQ(c.rabi.n_max, 20);
  EXPECT_EQ(c.figure_spec(FigureId::Fig4c).constants.Gamma, 32e-6);
  const json doc = config_to_json(c);
  EXPECT_EQ(doc["trap"]["V0_hz"], 1.05e6);
  EXPECT_EQ(doc["trap"]["recoil_hz"], 2e3);
  EXPECT_EQ(doc["trap"]["omega1_hz"], 93e3);
}

TEST(Json, RoundTrip) {
  Config c;
  c.fock_dim = 192;
  c.nbar0 = 0.3;
  c.trap.omega2 = constants::angular(30e3);
  c.figure_overrides[FigureId::Fig2c].envelope_tau = 50e-6;
  c.figure_overrides[FigureId::Fig2c].grid = GridOverride{0.0, 10.0, 0.5};
  const json doc = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(json::parse(doc.dump()))), doc);
  const FigureSpec spec = config_from_json(doc).figure_spec(FigureId::Fig2c);
  EXPECT_EQ(spec.constants.envelope_tau, 50e-6);
  EXPECT_EQ(spec.sweep.size(), 21u);
  EXPECT_EQ(spec.fock_dim, 192);
}

TEST(Json, RejectsUnknownKeysAndBadValues) {
  json top = minimal();
  top["colour"] = 1;
  EXPECT_THROW(config_from_json(top), ConfigError);
  json nested = minimal();
  nested["trap"] = {{"omega1", 93e3}};
  EXPECT_THROW(config_from_json(nested), ConfigError);
  json fig = minimal();
  fig["figure_overrides"] = {{"fig7", json::object()}};
  EXPECT_THROW(config_from_json(fig), ConfigError);
  json type = minimal();
  type["fock_dim"] = "big";
  EXPECT_THROW(config_from_json(type), ConfigError);
  json version = minimal();
  version["schema_version"] = 99;
  EXPECT_THROW(config_from_json(version), ConfigError);
  EXPECT_THROW(config_from_json(json::object()), ConfigError);
  EXPECT_THROW(config_from_json(json::array()), ConfigError);
}

TEST(Files, MissingAndMalformed) {
  EXPECT_THROW(load_config("/nonexistent/fjsq.json"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "fjsq_bad_config.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST(OutputDir, FlagThenEnvironmentThenConfig) {
  Config c;
  c.output_dir = "from_config";
  unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(c, std::nullopt), "from_config");
  setenv(kOutputDirEnv, "from_env", 1);
  EXPECT_EQ(resolve_output_dir(c, std::nullopt), "from_env");
  EXPECT_EQ(resolve_output_dir(c, std::filesystem::path("from_flag")), "from_flag");
  setenv(kOutputDirEnv, "", 1);
  EXPECT_EQ(resolve_output_dir(c, std::nullopt), "from_config");
  unsetenv(kOutputDirEnv);
}

TEST(Files, ShippedDefaultMatchesBuiltInDefaults) {
  const Config shipped = load_config(std::filesystem::path(FJSQ_SOURCE_DIR) / "configs" / "default.json");
  const json a = config_to_json(shipped);
  const json b = config_to_json(Config{});
  EXPECT_EQ(a.dump(), b.dump());
}
