#include "fjsq/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"
#include "fjsq/protocol.hpp"

namespace fjsq {
namespace {

constexpr int kBaselineSamples = 64;
constexpr double kMicro = 1e-6;
constexpr double kNano = 1e-9;

struct FigureInfo {
  FigureId id;
  std::string_view name;
};

constexpr std::array<FigureInfo, 9> kInfo = {{{FigureId::Fig2a, "fig2a"},
                                              {FigureId::Fig2aInset, "fig2a_inset"},
                                              {FigureId::Fig2b, "fig2b"},
                                              {FigureId::Fig2c, "fig2c"},
                                              {FigureId::Fig2d, "fig2d"},
                                              {FigureId::Fig3b, "fig3b"},
                                              {FigureId::Fig3c, "fig3c"},
                                              {FigureId::Fig4a, "fig4a"},
                                              {FigureId::Fig4c, "fig4c"}}};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// Copy of the trap whose lower frequency gives single-jump amplitude r.
TrapParams with_jump_amplitude(const TrapParams& trap, double r) {
  TrapParams t = trap;
  t.omega2 = trap.omega1 * std::exp(-2.0 * r);
  return t;
}

TrapParams with_anchor(const TrapParams& trap, const FigureConstants& c) {
  TrapParams t = trap;
  t.calibration = calibration_for_anchor(c.anchor_d, c.anchor_alpha, trap);
  return t;
}

Protocol empty_protocol(const TrapParams& trap) {
  Protocol p;
  p.omega_initial = Frequency::angular(trap.omega1);
  p.mass = trap.mass;
  p.calibration = trap.calibration;
  return p;
}

class Evaluator {
 public:
  explicit Evaluator(const FigureSpec& spec) : spec_(spec) {}

  double ratio(const ProtocolResult& summary, double nbar0) const {
    return ratio(implied_distribution(summary, nbar0, spec_.rabi.n_max, spec_.fock_dim));
  }

  double ratio(const NumberDistribution& dist) const { return sideband_populations(dist, spec_.rabi).ratio; }

  double thermal_ratio(double nbar0) const {
    return ratio(weighted_distribution([](int n, int l) { return n == l ? 1.0 : 0.0; }, nbar0, spec_.rabi.n_max,
                                       thermal_cutoff(nbar0)));
  }

 private:
  const FigureSpec& spec_;
};

// Evaluates f, naming `where` in any library error that escapes.
template <class F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const TruncationError& e) {
    throw e.with_context(where);
  } catch (const CutoffError& e) {
    throw CutoffError(where + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const Error& e) {
    throw NumericError(where + ": " + e.what());
  }
}

template <class F>
std::vector<double> rows(const FigureSpec& spec, F&& f) {
  std::vector<double> out;
  out.reserve(spec.sweep.size());
  for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
    const std::string where =
        std::string(figure_name(spec.id)) + " row " + std::to_string(i) + " (x = " + fmt(spec.sweep[i]) + ")";
    out.push_back(located(where, [&] { return f(spec.sweep[i]); }));
    if (!std::isfinite(out.back())) throw NumericError(where + ": non-finite value");
  }
  return out;
}

// Mean of f over one period, sampled uniformly.
double period_average(double period, const std::function<double(double)>& f) {
  double sum = 0.0;
  for (int k = 0; k < kBaselineSamples; ++k) sum += f(period * k / kBaselineSamples);
  return sum / kBaselineSamples;
}

double enveloped(double raw, double baseline, double t, double tau) {
  if (tau <= 0.0) return raw;
  return baseline + (raw - baseline) * std::exp(-t / tau);
}

std::vector<std::pair<std::string, std::string>> echo(const FigureSpec& s) {
  const auto& t = s.trap;
  const auto& r = s.rabi;
  const auto& c = s.constants;
  std::vector<std::pair<std::string, std::string>> m = {
      {"figure", std::string(figure_name(s.id))},
      {"rows", std::to_string(s.sweep.size())},
      {"sweep_first", fmt(s.sweep.front())},
      {"sweep_last", fmt(s.sweep.back())},
      {"omega1_hz", fmt(t.omega1 / constants::kTwoPi)},
      {"omega2_hz", fmt(t.omega2 / constants::kTwoPi)},
      {"mass_kg", fmt(t.mass)},
      {"lattice_wavenumber_per_m", fmt(t.lattice_wavenumber)},
      {"V0_hz", fmt(constants::hz_from_energy(t.V0))},
      {"recoil_hz", fmt(constants::hz_from_energy(t.recoil_energy()))},
      {"calibration", fmt(t.calibration)},
      {"rabi_omega01_hz", fmt(r.omega01 / constants::kTwoPi)},
      {"rabi_gamma_per_s", fmt(r.gamma)},
      {"rabi_pulse_s", fmt(r.pulse_t)},
      {"rabi_n_max", std::to_string(r.n_max)},
      {"fock_dim", std::to_string(s.fock_dim)},
      {"nbar0", fmt(c.nbar0)},
      {"envelope_tau_s", fmt(c.envelope_tau)},
      {"Gamma_s", fmt(c.Gamma)},
      {"alpha_i", fmt(c.alpha_i)},
      {"two_r", fmt(c.two_r)},
      {"per_jump_r", fmt(c.per_jump_r)},
      {"shift_d_m", fmt(c.shift_d)},
      {"squeeze_factor", fmt(c.squeeze_factor)},
      {"anchor_d_m", fmt(c.anchor_d)},
      {"anchor_alpha", fmt(c.anchor_alpha)},
      {"bound_states", fmt(c.bound_states)},
  };
  return m;
}

CurveTable fig2a(const FigureSpec& s) {
  const Evaluator ev(s);
  const auto& c = s.constants;
  CurveTable t;
  auto run = [&](double two_r, double phase) {
    const TrapParams trap = with_jump_amplitude(s.trap, two_r / 2.0);
    Protocol p = builtin_protocol(Builtin::SMinus2r, trap);
    std::get<Wait>(p.steps[1]).tau = phase / trap.omega2;
    return run_symplectic(p);
  };
  std::vector<double> r_eff, raw, env, nbar, dnbar, c2, c4, c1, within, db;
  raw = rows(s, [&](double two_r) {
    const ProtocolResult res = run(two_r, constants::kPi / 2.0);
    r_eff.push_back(squeeze_params_from_pair(res.pair).r);
    const double value = ev.ratio(res, c.nbar0);
    const double baseline =
        period_average(constants::kPi, [&](double phase) { return ev.ratio(run(two_r, phase), c.nbar0); });
    const double tau_s = constants::kPi / (2.0 * with_jump_amplitude(s.trap, two_r / 2.0).omega2);
    env.push_back(enveloped(value, baseline, tau_s, c.envelope_tau));

    const SqueezedThermalMoments m = squeezed_thermal_moments(c.nbar0, two_r);
    nbar.push_back(m.nbar_st);
    dnbar.push_back(m.dnbar_st);
    c2.push_back(m.nbar_st + m.dnbar_st);
    const SqueezedThermalMoments m4 = squeezed_thermal_moments(c.nbar0, 2.0 * two_r);
    c4.push_back(m4.nbar_st + m4.dnbar_st);
    const SqueezedThermalMoments m1 = squeezed_thermal_moments(c.nbar0, two_r / 2.0);
    c1.push_back(m1.nbar_st + m1.dnbar_st);
    within.push_back(c2.back() <= c.bound_states ? 1.0 : 0.0);
    db.push_back(squeezing_db(two_r / 2.0));
    return value;
  });
  t.names = {"two_r",    "r_eff",        "R",            "R_enveloped", "nbar_st", "dnbar_st",
             "ceiling_s_2r", "ceiling_s_4r", "ceiling_s_r", "within_bound", "squeezing_db"};
  t.columns = {s.sweep, r_eff, raw, env, nbar, dnbar, c2, c4, c1, within, db};
  t.metadata.emplace_back("envelope_time", "quarter period pi/(2 omega2) of each row's jump");
  t.metadata.emplace_back("lattice_bound_states_three_term", std::to_string(bound_state_count(s.trap)));
  return t;
}

CurveTable fig2a_inset(const FigureSpec& s) {
  const Evaluator ev(s);
  const auto& c = s.constants;
  const TrapParams trap = with_jump_amplitude(s.trap, c.per_jump_r);
  std::vector<double> total, expected;
  auto raw = rows(s, [&](double n) {
    if (n < 1.0 || n != std::floor(n)) throw DomainError("fig2a_inset: N must be a positive integer");
    BuiltinOptions options;
    options.n_jumps = static_cast<int>(n);
    const ProtocolResult res = run_symplectic(builtin_protocol(Builtin::MultiJump, trap, options));
    total.push_back(squeeze_params_from_pair(res.pair).r);
    expected.push_back(n * c.per_jump_r);
    return ev.ratio(res, c.nbar0);
  });
  CurveTable t;
  t.names = {"N", "total_r", "expected_total_r", "R"};
  t.columns = {s.sweep, total, expected, raw};
  return t;
}

CurveTable fig2b(const FigureSpec& s) {
  const Evaluator ev(s);
  const double nbar0 = s.constants.nbar0;
  std::vector<double> r_eff;
  auto raw = rows(s, [&](double r) {
    const TrapParams trap = with_jump_amplitude(s.trap, r);
    Protocol p = empty_protocol(trap);
    p.steps = {FrequencyJump{Frequency::angular(trap.omega2)}, FrequencyJump{Frequency::angular(trap.omega1)}};
    const ProtocolResult res = run_symplectic(p);
    r_eff.push_back(squeeze_params_from_pair(res.pair).r);
    return ev.ratio(res, nbar0);
  });
  CurveTable t;
  t.names = {"r", "r_eff", "R", "R_baseline"};
  t.columns = {s.sweep, r_eff, raw, std::vector<double>(raw.size(), ev.thermal_ratio(nbar0))};
  return t;
}

// Sweeps over a wait time in microseconds; `run` maps the wait (s) to a summary.
struct TimeSweep {
  std::vector<double> raw, env, aux;
};

TimeSweep time_sweep(const FigureSpec& s, double period, double tau_env,
                     const std::function<ProtocolResult(double)>& run,
                     const std::function<double(const ProtocolResult&)>& aux) {
  const Evaluator ev(s);
  const double nbar0 = s.constants.nbar0;
  const double baseline = located(std::string(figure_name(s.id)) + " baseline", [&] {
    return period_average(period, [&](double tau) { return ev.ratio(run(tau), nbar0); });
  });
  TimeSweep out;
  out.raw = rows(s, [&](double tau_us) {
    const double tau = tau_us * kMicro;
    const ProtocolResult res = run(tau);
    const double value = ev.ratio(res, nbar0);
    out.env.push_back(enveloped(value, baseline, tau, tau_env));
    out.aux.push_back(aux(res));
    return value;
  });
  return out;
}

CurveTable fig2c(const FigureSpec& s) {
  const TrapParams& trap = s.trap;
  const double period = constants::kPi / trap.omega2;
  const TimeSweep sw = time_sweep(
      s, period, s.constants.envelope_tau,
      [&](double tau) {
        Protocol p = builtin_protocol(Builtin::SMinus2r, trap);
        std::get<Wait>(p.steps[1]).tau = tau;
        return run_symplectic(p);
      },
      [](const ProtocolResult& r) { return squeeze_params_from_pair(r.pair).r; });
  CurveTable t;
  t.names = {"tau_us", "r_eff", "R", "R_enveloped"};
  t.columns = {s.sweep, sw.aux, sw.raw, sw.env};
  t.metadata.emplace_back("theory_period_us", fmt(period / kMicro));
  return t;
}

CurveTable fig2d(const FigureSpec& s) {
  const auto& c = s.constants;
  const TrapParams trap = with_jump_amplitude(s.trap, std::log(c.squeeze_factor) / 2.0);
  const double r_total = squeeze_params_from_pair(run_symplectic(builtin_protocol(Builtin::SPlus2r, trap)).pair).r;
  const GroundStateWidths ground = ground_state_widths(s.trap, 0.0, 0.0);
  const GroundStateWidths p_sq = ground_state_widths(s.trap, 0.0, r_total);
  const GroundStateWidths x_sq = ground_state_widths(s.trap, 0.0, -r_total);
  const GroundStateWidths thermal = ground_state_widths(s.trap, c.nbar0, 0.0);
  constexpr double kCm = 1e-2;
  auto profile = [&](const GroundStateWidths& w) {
    return rows(s, [&](double v_cm_s) {
      const double v = v_cm_s * kCm;
      return std::exp(-2.0 * v * v / (w.width_1e2_v * w.width_1e2_v));
    });
  };
  CurveTable t;
  t.names = {"v_cm_s", "ground", "momentum_squeezed", "position_squeezed", "ground_thermal", "thermal_broadening"};
  t.columns = {s.sweep,       profile(ground), profile(p_sq), profile(x_sq), profile(thermal),
               std::vector<double>(s.sweep.size(), thermal.thermal_broadening)};
  t.metadata = {
      {"r_total", fmt(r_total)},
      {"width_ground_cm_s", fmt(ground.width_1e2_v / kCm)},
      {"width_momentum_squeezed_cm_s", fmt(p_sq.width_1e2_v / kCm)},
      {"width_position_squeezed_cm_s", fmt(x_sq.width_1e2_v / kCm)},
      {"ratio_ground_over_momentum_squeezed", fmt(ground.width_1e2_v / p_sq.width_1e2_v)},
      {"ratio_position_squeezed_over_ground", fmt(x_sq.width_1e2_v / ground.width_1e2_v)},
      {"measured_ratio_momentum_squeezed", "2.43(8)"},
      {"measured_ratio_position_squeezed", "2.18(8)"},
  };
  return t;
}

CurveTable fig3b(const FigureSpec& s) {
  const Evaluator ev(s);
  const TrapParams trap = with_anchor(s.trap, s.constants);
  std::vector<double> alpha, coherent;
  auto displaced = rows(s, [&](double d_nm) {
    Protocol p = empty_protocol(trap);
    p.steps = {ShiftOrigin{d_nm * kNano}};
    const ProtocolResult res = run_symplectic(p);
    alpha.push_back(std::abs(res.displacement));
    coherent.push_back(ev.ratio(res, 0.0));
    return ev.ratio(res, s.constants.nbar0);
  });
  CurveTable t;
  t.names = {"d_nm", "alpha", "R_displaced_thermal", "R_coherent"};
  t.columns = {s.sweep, alpha, displaced, coherent};
  t.metadata = {{"pinned_calibration", fmt(trap.calibration)},
                {"alpha_at_anchor_first_principles", fmt(coherent_alpha_from_shift(s.constants.anchor_d, s.trap))}};
  return t;
}

CurveTable fig3c(const FigureSpec& s) {
  const TrapParams trap = with_anchor(s.trap, s.constants);
  const double period = constants::kTwoPi / trap.omega1;
  const double d = s.constants.shift_d;
  const TimeSweep sw = time_sweep(
      s, period, s.constants.envelope_tau,
      [&](double tau) {
        Protocol p = empty_protocol(trap);
        p.steps = {ShiftOrigin{d}, Wait{tau}, UnshiftOrigin{}};
        return run_symplectic(p);
      },
      [](const ProtocolResult& r) { return std::abs(r.displacement); });
  CurveTable t;
  t.names = {"tau_us", "alpha_abs", "R", "R_enveloped"};
  t.columns = {s.sweep, sw.aux, sw.raw, sw.env};
  t.metadata = {{"pinned_calibration", fmt(trap.calibration)},
                {"shift_alpha", fmt(coherent_alpha_from_shift(d, trap))},
                {"theory_period_us", fmt(period / kMicro)}};
  return t;
}

CurveTable fig4a(const FigureSpec& s) {
  const auto& c = s.constants;
  const TrapParams trap = with_jump_amplitude(with_anchor(s.trap, c), c.two_r / 2.0);
  const double period = constants::kTwoPi / trap.omega1;
  BuiltinOptions options;
  options.alpha_i = c.alpha_i;
  const Protocol prefix = builtin_protocol(Builtin::DisplacedSqueeze, trap, options);
  const TimeSweep sw = time_sweep(
      s, period, c.envelope_tau,
      [&](double tau) {
        Protocol p = prefix;
        p.steps.push_back(Wait{tau});
        p.steps.push_back(UnshiftOrigin{});
        return run_symplectic(p);
      },
      [](const ProtocolResult& r) { return std::abs(r.displacement); });
  CurveTable t;
  t.names = {"tau_us", "alpha_abs", "R", "R_enveloped"};
  t.columns = {s.sweep, sw.aux, sw.raw, sw.env};
  t.metadata = {{"theory_period_us", fmt(period / kMicro)},
                {"r_eff", fmt(squeeze_params_from_pair(run_symplectic(prefix).pair).r)}};
  return t;
}

CurveTable fig4c(const FigureSpec& s) {
  const Evaluator ev(s);
  const auto& c = s.constants;
  BuiltinOptions options;
  options.alpha_i = c.alpha_i;
  std::vector<double> alpha_f, weight, plain, residual;
  auto decohered = rows(s, [&](double two_r) {
    const TrapParams trap = with_jump_amplitude(s.trap, two_r / 2.0);
    const Protocol p = builtin_protocol(Builtin::Amplify, trap, options);
    const ProtocolResult res = run_symplectic(p);
    const DecoherenceParams dec{c.Gamma, p.total_wait()};
    alpha_f.push_back(std::abs(res.displacement));
    weight.push_back(dec.coherent_weight());
    residual.push_back(squeeze_params_from_pair(res.pair).r);
    plain.push_back(ev.ratio(amplified_distribution_decohered(res.displacement, c.nbar0, {c.Gamma, 0.0},
                                                              s.rabi.n_max)));
    return ev.ratio(amplified_distribution_decohered(res.displacement, c.nbar0, dec, s.rabi.n_max));
  });
  CurveTable t;
  t.names = {"two_r", "alpha_f_abs", "coherent_weight", "residual_r", "R_with_decoherence", "R_no_decoherence"};
  t.columns = {s.sweep, alpha_f, weight, residual, decohered, plain};
  t.metadata.emplace_back("t_prime", "total wait of the amplification sequence");
  return t;
}

}  // namespace

std::string_view figure_name(FigureId id) {
  for (const auto& info : kInfo)
    if (info.id == id) return info.name;
  return "unknown";
}

FigureId parse_figure(std::string_view name) {
  for (const auto& info : kInfo)
    if (info.name == name) return info.id;
  throw DomainError("unknown figure id '" + std::string(name) + "'");
}

void FigureSpec::validate() const {
  const std::string where(figure_name(id));
  if (sweep.empty()) throw DomainError(where + ": sweep grid is empty");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (!std::isfinite(sweep[i])) throw DomainError(where + ": sweep value is not finite");
    if (i > 0 && !(sweep[i] > sweep[i - 1])) throw DomainError(where + ": sweep grid must be strictly increasing");
  }
  trap.validate();
  rabi.validate();
  const FigureConstants& c = constants;
  if (!(c.nbar0 >= 0.0)) throw DomainError(where + ": nbar0 must be >= 0");
  if (!(c.envelope_tau >= 0.0)) throw DomainError(where + ": envelope time must be >= 0");
  for (double v : {c.Gamma, c.alpha_i, c.two_r, c.per_jump_r, c.shift_d, c.squeeze_factor, c.anchor_d, c.anchor_alpha,
                   c.bound_states})
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(where + ": figure constants must be positive");
  if (fock_dim < 2 * kGuardBand) throw DomainError(where + ": fock_dim too small");
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw DomainError("linear_grid: need step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

FigureSpec default_figure_spec(FigureId id, const TrapParams& trap, const RabiParams& rabi) {
  FigureSpec s;
  s.id = id;
  s.trap = trap;
  s.rabi = rabi;
  FigureConstants& c = s.constants;
  switch (id) {
    case FigureId::Fig2a:
      s.sweep = linear_grid(0.0, 2.8, 0.05);
      c.envelope_tau = 46e-6;
      break;
    case FigureId::Fig2aInset:
      s.sweep = linear_grid(1.0, 4.0, 1.0);
      break;
    case FigureId::Fig2b:
      s.sweep = linear_grid(0.0, 0.8, 0.01);
      break;
    case FigureId::Fig2c:
      s.sweep = linear_grid(0.0, 100.0, 0.1);
      c.envelope_tau = 46e-6;
      break;
    case FigureId::Fig2d:
      s.sweep = linear_grid(-8.0, 8.0, 0.05);
      break;
    case FigureId::Fig3b:
      s.sweep = linear_grid(0.0, 140.0, 1.0);
      c.nbar0 = 0.38;
      break;
    case FigureId::Fig3c:
      s.sweep = linear_grid(0.0, 60.0, 0.1);
      c.nbar0 = 0.38;
      c.envelope_tau = 27e-6;
      break;
    case FigureId::Fig4a:
      s.sweep = linear_grid(0.0, 60.0, 0.1);
      c.nbar0 = 0.35;
      c.envelope_tau = 32e-6;
      break;
    case FigureId::Fig4c:
      s.sweep = linear_grid(0.0, 1.5, 0.05);
      c.nbar0 = 0.35;
      break;
  }
  return s;
}

const std::vector<double>& CurveTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return columns[i];
  throw DomainError("CurveTable: no column '" + std::string(name) + "'");
}

CurveTable generate(const FigureSpec& spec) {
  spec.validate();
  CurveTable table;
  switch (spec.id) {
    case FigureId::Fig2a: table = fig2a(spec); break;
    case FigureId::Fig2aInset: table = fig2a_inset(spec); break;
    case FigureId::Fig2b: table = fig2b(spec); break;
    case FigureId::Fig2c: table = fig2c(spec); break;
    case FigureId::Fig2d: table = fig2d(spec); break;
    case FigureId::Fig3b: table = fig3b(spec); break;
    case FigureId::Fig3c: table = fig3c(spec); break;
    case FigureId::Fig4a: table = fig4a(spec); break;
    case FigureId::Fig4c: table = fig4c(spec); break;
  }
  table.id = spec.id;
  auto meta = echo(spec);
  meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
  table.metadata = std::move(meta);
  for (const auto& col : table.columns)
    if (col.size() != spec.sweep.size()) throw ContractError("generate: column length differs from the grid");
  return table;
}

std::string format_csv(const CurveTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t j = 0; j < table.names.size(); ++j) out << (j ? "," : "") << table.names[j];
  out << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << fmt(table.columns[j][i]);
    out << '\n';
  }
  return out.str();
}

void emit_csv(const CurveTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << format_csv(table);
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string plot_script(const CurveTable& table, const std::string& csv_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set key outside\n";
  out << "set xlabel '" << table.names.front() << "'\n";
  out << "set title '" << figure_name(table.id) << "'\n";
  out << "plot";
  for (std::size_t j = 1; j < table.names.size(); ++j) {
    out << (j > 1 ? ", \\\n     ''" : " '" + csv_name + "'") << " using 1:" << j + 1
        << " with lines title columnheader(" << j + 1 << ")";
  }
  out << "\npause mouse close\n";
  return out.str();
}

double estimate_period(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  const double dt = t[1] - t[0];
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] > mean)) continue;
    const double curvature = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double offset = curvature != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / curvature : 0.0;
    peaks.push_back(t[i] + offset * dt);
  }
  if (peaks.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

double autocorrelation_peak_lag(std::span<const double> y, double dt) {
  const std::size_t n = y.size();
  if (n < 4) return std::numeric_limits<double>::quiet_NaN();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> acf(n / 2 + 1);
  for (std::size_t k = 0; k < acf.size(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) sum += (y[i] - mean) * (y[i + k] - mean);
    acf[k] = sum / static_cast<double>(n - k);
  }
  if (!(acf[0] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  std::size_t k = 1;
  while (k < acf.size() && acf[k] >= 0.0) ++k;
  for (++k; k + 1 < acf.size(); ++k) {
    if (acf[k] > 0.0 && acf[k] >= acf[k - 1] && acf[k] >= acf[k + 1]) {
      const double curvature = acf[k - 1] - 2.0 * acf[k] + acf[k + 1];
      const double offset = curvature != 0.0 ? 0.5 * (acf[k - 1] - acf[k + 1]) / curvature : 0.0;
      return (static_cast<double>(k) + offset) * dt;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace fjsq
