// fjsq: figure tables, ad-hoc protocol runs and the oracle self-check.
//
// Exit codes: 0 success, 1 selfcheck failure, 2 configuration error,
// 3 numerical or truncation failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fjsq/config.hpp"
#include "fjsq/errors.hpp"
#include "fjsq/figures.hpp"
#include "fjsq/protocol.hpp"
#include "fjsq/selfcheck.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSelfcheckFailed = 1;
constexpr int kConfigFailure = 2;
constexpr int kNumericFailure = 3;

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_dir;
  bool plot_script = false;
  std::string figure;
  std::string protocol_path;
};

fjsq::Config load(const Options& o) {
  return o.config_path.empty() ? fjsq::Config{} : fjsq::load_config(o.config_path);
}

std::string diagnostics(const fjsq::CurveTable& t) {
  char buf[160] = "";
  using fjsq::FigureId;
  switch (t.id) {
    case FigureId::Fig2a:
      std::snprintf(buf, sizeof buf, "R(2r=0)=%.5f R(2r=max)=%.5f", t.column("R").front(), t.column("R").back());
      break;
    case FigureId::Fig2c:
    case FigureId::Fig3c:
      std::snprintf(buf, sizeof buf, "period=%.3f us",
                    fjsq::estimate_period(t.column("tau_us"), t.column("R")));
      break;
    case FigureId::Fig4a: {
      const auto& tau = t.column("tau_us");
      std::snprintf(buf, sizeof buf, "autocorrelation period=%.3f us",
                    fjsq::autocorrelation_peak_lag(t.column("R"), tau[1] - tau[0]));
      break;
    }
    case FigureId::Fig2d:
      for (const auto& [k, v] : t.metadata)
        if (k == "width_ground_cm_s") std::snprintf(buf, sizeof buf, "ground 1/e^2 width=%s cm/s", v.c_str());
      break;
    default:
      break;
  }
  return buf;
}

int cmd_figure(const Options& o) {
  const fjsq::Config cfg = load(o);
  std::vector<fjsq::FigureId> ids;
  if (o.figure == "all") {
    ids.assign(fjsq::kAllFigures.begin(), fjsq::kAllFigures.end());
  } else {
    try {
      ids.push_back(fjsq::parse_figure(o.figure));
    } catch (const fjsq::DomainError& e) {
      throw fjsq::ConfigError(e.what());
    }
  }
  const std::filesystem::path out =
      fjsq::resolve_output_dir(cfg, o.out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(o.out_dir));

  // Everything is computed before the first file is written.
  std::vector<fjsq::CurveTable> tables;
  for (const auto id : ids) {
    const auto start = std::chrono::steady_clock::now();
    tables.push_back(fjsq::generate(cfg.figure_spec(id)));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s: %zu rows, %.2f s %s\n", std::string(fjsq::figure_name(id)).c_str(), tables.back().rows(), seconds,
                diagnostics(tables.back()).c_str());
  }
  for (const auto& t : tables) {
    const std::string name(fjsq::figure_name(t.id));
    fjsq::emit_csv(t, out / (name + ".csv"));
    if (o.plot_script) {
      const std::filesystem::path script = out / (name + ".gp");
      std::ofstream(script) << fjsq::plot_script(t, name + ".csv");
    }
  }
  std::printf("wrote %zu table(s) to %s\n", tables.size(), out.string().c_str());
  return kOk;
}

json complex_json(fjsq::Complex z) { return json::array({z.real(), z.imag()}); }

int cmd_protocol_run(const Options& o) {
  const fjsq::Config cfg = load(o);
  const fjsq::Protocol protocol = fjsq::protocol_from_json(fjsq::read_json_file(o.protocol_path), cfg.trap);
  const fjsq::ProtocolResult res = fjsq::run_symplectic(protocol);
  const fjsq::SqueezeParams sq = fjsq::squeeze_params_from_pair(res.pair);
  const fjsq::NumberDistribution dist = fjsq::implied_distribution(res, cfg.nbar0, cfg.rabi.n_max, cfg.fock_dim);
  const fjsq::SidebandResult side = fjsq::sideband_populations(dist, cfg.rabi);

  json jumps = json::array();
  double omega = protocol.omega_initial.angular();
  for (const auto& step : protocol.steps) {
    if (const auto* j = std::get_if<fjsq::FrequencyJump>(&step)) {
      jumps.push_back(fjsq::bogoliubov_from_jump(omega, j->target.angular()).r);
      omega = j->target.angular();
    }
  }
  const json doc = {
      {"steps", protocol.steps.size()},
      {"jump_amplitudes", jumps},
      {"pair", {{"u", complex_json(res.pair.u)}, {"v", complex_json(res.pair.v)}}},
      {"invariant_defect", res.pair.invariant_defect()},
      {"r_eff", sq.r},
      {"theta", sq.theta},
      {"displacement", complex_json(res.displacement)},
      {"displacement_abs", std::abs(res.displacement)},
      {"elapsed_s", res.elapsed},
      {"final_omega_hz", res.final_omega.in_hz()},
      {"nbar0", cfg.nbar0},
      {"mean_n", dist.mean()},
      {"p_plus", side.p_plus},
      {"p_minus", side.p_minus},
      {"R", side.ratio},
  };
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

int cmd_selfcheck(const Options& o) {
  const fjsq::SelfcheckReport report = fjsq::run_selfcheck(load(o));
  std::cout << report.format();
  return report.passed() ? kOk : kSelfcheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-jump squeezing of trapped atoms: figure tables, protocol runs, oracle self-check"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON configuration (frequencies in Hz)")->check(CLI::ExistingFile);
  app.add_option("--out", o.out_dir, "output directory (overrides the config and $FJSQ_OUTPUT_DIR)");
  app.add_flag("--plot-script", o.plot_script, "also write a gnuplot script next to each CSV");

  auto* figure = app.add_subcommand("figure", "generate figure tables");
  figure->add_option("id", o.figure, "figure id or 'all'")->required();
  auto* protocol = app.add_subcommand("protocol", "protocol operations");
  protocol->require_subcommand(1);
  auto* run = protocol->add_subcommand("run", "run a protocol document and print its summary");
  run->add_option("file", o.protocol_path, "protocol JSON")->required()->check(CLI::ExistingFile);
  auto* selfcheck = app.add_subcommand("selfcheck", "compare closed forms with brute-force references");

  for (auto* sub : {figure, run, selfcheck}) {
    sub->add_option("--config", o.config_path, "JSON configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_flag("--plot-script", o.plot_script, "also write a gnuplot script");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  try {
    if (*figure) return cmd_figure(o);
    if (*run) return cmd_protocol_run(o);
    if (*selfcheck) return cmd_selfcheck(o);
  } catch (const fjsq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const fjsq::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const fjsq::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kOk;
}
