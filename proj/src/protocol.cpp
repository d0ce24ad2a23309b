#include "fjsq/protocol.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "fjsq/errors.hpp"
#include "fjsq/spectroscopy.hpp"

namespace fjsq {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double shift_alpha(double d, double omega, const Protocol& p) {
  return d / (2.0 * p.calibration * ground_state_extent(omega, p.mass));
}

double quarter_period(double omega) { return constants::kPi / (2.0 * omega); }

// Builds exact operators once per distinct parameter within a run.
class OperatorCache {
 public:
  explicit OperatorCache(int dim) : dim_(dim) {}

  const ComplexMatrix& squeeze(double r) {
    auto it = squeezes_.find(r);
    if (it == squeezes_.end()) it = squeezes_.emplace(r, squeeze_operator_exact(r, 0.0, dim_)).first;
    return it->second;
  }

  const ComplexMatrix& displacement(double alpha) {
    auto it = displacements_.find(alpha);
    if (it == displacements_.end())
      it = displacements_.emplace(alpha, displacement_operator_exact(alpha, dim_)).first;
    return it->second;
  }

 private:
  int dim_;
  std::map<double, ComplexMatrix> squeezes_;
  std::map<double, ComplexMatrix> displacements_;
};

// Spectral decompositions of the Hermitian generators i(a^2 - a_dag^2)/2 and
// i(a_dag - a), cached per dimension. exp(-i x H) = V exp(-i x lambda) V^dagger.
struct Spectral {
  ComplexMatrix vectors;
  Eigen::VectorXd values;

  // exp(-i x H) * block
  ComplexMatrix apply(double x, const ComplexMatrix& block) const {
    ComplexMatrix t = vectors.adjoint() * block;
    for (Eigen::Index k = 0; k < values.size(); ++k) t.row(k) *= std::polar(1.0, -x * values(k));
    return vectors * t;
  }
};

struct GeneratorSpectra {
  Spectral squeeze;
  Spectral displace;
};

const GeneratorSpectra& generator_spectra(int dim) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GeneratorSpectra>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[dim];
  if (!slot) {
    const auto [a, a_dag] = ladder_operators(dim);
    const Complex i{0.0, 1.0};
    auto decompose = [](const ComplexMatrix& h) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
      return Spectral{solver.eigenvectors(), solver.eigenvalues()};
    };
    slot = std::make_unique<GeneratorSpectra>(
        GeneratorSpectra{decompose(0.5 * i * (a * a - a_dag * a_dag)), decompose(i * (a_dag - a))});
  }
  return *slot;
}

// Phases R(phi) = diag(exp(-i phi n)) applied to the rows of `block`.
void rotate_rows(ComplexMatrix& block, double phi) {
  for (Eigen::Index n = 0; n < block.rows(); ++n) block.row(n) *= std::polar(1.0, -phi * static_cast<double>(n));
}

// First `l_max + 1` columns of D(alpha) S(r e^{2 i theta}), using
// S(r e^{2i theta}) = R(-theta) S(r) R(-theta)^dagger and likewise for D.
ComplexMatrix gaussian_columns(int dim, double r, double theta, Complex alpha, int l_max) {
  if (l_max >= dim) throw DimensionError("gaussian_columns: l_max must be below the dimension");
  const GeneratorSpectra& spectra = generator_spectra(dim);
  ComplexMatrix block = ComplexMatrix::Identity(dim, l_max + 1);
  rotate_rows(block, theta);
  block = spectra.squeeze.apply(r, block);
  rotate_rows(block, -theta);
  const double psi = std::arg(alpha);
  rotate_rows(block, psi);
  block = spectra.displace.apply(std::abs(alpha), block);
  rotate_rows(block, -psi);
  return block;
}

}  // namespace

std::string describe(const ProtocolStep& step) {
  std::ostringstream out;
  out.precision(9);
  std::visit(Overloaded{
                 [&](const FrequencyJump& s) { out << "FrequencyJump{" << s.target.in_hz() << " Hz}"; },
                 [&](const Wait& s) { out << "Wait{" << s.tau << " s}"; },
                 [&](const ShiftOrigin& s) { out << "ShiftOrigin{" << s.d << " m}"; },
                 [&](const UnshiftOrigin&) { out << "UnshiftOrigin{}"; },
             },
             step);
  return out.str();
}

void Protocol::validate() const {
  if (!(omega_initial.in_hz() > 0.0) || !std::isfinite(omega_initial.in_hz()))
    throw DomainError("Protocol: omega_initial must be positive");
  if (!(mass > 0.0)) throw DomainError("Protocol: mass must be positive");
  if (!(calibration > 0.0)) throw DomainError("Protocol: calibration must be positive");
  int open_shifts = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "Protocol step " + std::to_string(i) + " (" + describe(steps[i]) + ")";
    std::visit(Overloaded{
                   [&](const FrequencyJump& s) {
                     if (!(s.target.in_hz() > 0.0) || !std::isfinite(s.target.in_hz()))
                       throw DomainError(where + ": frequency must be positive");
                   },
                   [&](const Wait& s) {
                     if (!(s.tau >= 0.0) || !std::isfinite(s.tau))
                       throw DomainError(where + ": wait must be non-negative and finite");
                   },
                   [&](const ShiftOrigin& s) {
                     if (!std::isfinite(s.d)) throw DomainError(where + ": shift must be finite");
                     ++open_shifts;
                   },
                   [&](const UnshiftOrigin&) {
                     if (open_shifts == 0) throw ContractError(where + ": no shift to undo");
                     --open_shifts;
                   },
               },
               steps[i]);
  }
}

double Protocol::total_wait() const {
  double total = 0.0;
  for (const auto& step : steps)
    if (const auto* w = std::get_if<Wait>(&step)) total += w->tau;
  return total;
}

ProtocolResult run_fock(const Protocol& protocol, const ComplexMatrix& initial) {
  protocol.validate();
  check_density(initial);
  const int dim = static_cast<int>(initial.rows());
  OperatorCache cache(dim);

  ProtocolResult result;
  ComplexMatrix rho = initial;
  double omega = protocol.omega_initial.angular();
  std::vector<double> open_shifts;

  for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
    const ProtocolStep& step = protocol.steps[i];
    const std::string where = "step " + std::to_string(i) + " (" + describe(step) + ")";
    try {
      std::visit(Overloaded{
                     [&](const FrequencyJump& s) {
                       const double target = s.target.angular();
                       rho = apply_unitary(cache.squeeze(0.5 * std::log(omega / target)), rho);
                       omega = target;
                     },
                     [&](const Wait& s) {
                       rho = apply_unitary(free_evolution_operator(omega, s.tau, dim), rho);
                       result.elapsed += s.tau;
                     },
                     [&](const ShiftOrigin& s) {
                       rho = apply_unitary(cache.displacement(shift_alpha(s.d, omega, protocol)), rho);
                       open_shifts.push_back(s.d);
                     },
                     [&](const UnshiftOrigin&) {
                       rho = apply_unitary(cache.displacement(-shift_alpha(open_shifts.back(), omega, protocol)), rho);
                       open_shifts.pop_back();
                     },
                 },
                 step);
      check_tail(rho, "state");
    } catch (const TruncationError& e) {
      throw e.with_context("run_fock " + where);
    }
  }

  // The Fock summary is recomputed symplectically so both backends report the same (pair, alpha).
  const ProtocolResult summary = run_symplectic(protocol);
  result.final_rho = std::move(rho);
  result.pair = summary.pair;
  result.displacement = summary.displacement;
  result.final_omega = Frequency::angular(omega);
  return result;
}

ProtocolResult run_symplectic(const Protocol& protocol) {
  protocol.validate();
  ProtocolResult result;
  BogoliubovPair pair;
  Complex alpha{0.0, 0.0};
  double omega = protocol.omega_initial.angular();
  Frequency current = protocol.omega_initial;
  std::vector<double> open_shifts;

  for (const ProtocolStep& step : protocol.steps) {
    std::visit(Overloaded{
                   [&](const FrequencyJump& s) {
                     const JumpTransform jump = bogoliubov_from_jump(omega, s.target.angular());
                     pair = compose_jump(pair, jump.pair);
                     // J D(alpha) J^dagger = D(u alpha - v alpha*)
                     alpha = jump.pair.u * alpha - jump.pair.v * std::conj(alpha);
                     omega = s.target.angular();
                     current = s.target;
                   },
                   [&](const Wait& s) {
                     const double phase = omega * s.tau;
                     pair = compose_wait(pair, phase);
                     alpha *= std::polar(1.0, -phase);
                     result.elapsed += s.tau;
                   },
                   [&](const ShiftOrigin& s) {
                     alpha += shift_alpha(s.d, omega, protocol);
                     open_shifts.push_back(s.d);
                   },
                   [&](const UnshiftOrigin&) {
                     alpha -= shift_alpha(open_shifts.back(), omega, protocol);
                     open_shifts.pop_back();
                   },
               },
               step);
  }
  result.pair = pair;
  result.displacement = alpha;
  result.final_omega = current;
  return result;
}

Complex amplified_alpha(Complex alpha_i, double r) { return alpha_i * std::exp(2.0 * r) * std::polar(1.0, constants::kPi); }

Builtin parse_builtin(std::string_view name) {
  if (name == "S_minus_2r") return Builtin::SMinus2r;
  if (name == "S_plus_2r") return Builtin::SPlus2r;
  if (name == "multi_jump") return Builtin::MultiJump;
  if (name == "displaced_squeeze") return Builtin::DisplacedSqueeze;
  if (name == "amplify") return Builtin::Amplify;
  throw DomainError("unknown builtin protocol '" + std::string(name) + "'");
}

std::string_view builtin_name(Builtin b) {
  switch (b) {
    case Builtin::SMinus2r:
      return "S_minus_2r";
    case Builtin::SPlus2r:
      return "S_plus_2r";
    case Builtin::MultiJump:
      return "multi_jump";
    case Builtin::DisplacedSqueeze:
      return "displaced_squeeze";
    case Builtin::Amplify:
      return "amplify";
  }
  return "unknown";
}

Protocol builtin_protocol(Builtin which, const TrapParams& params, const BuiltinOptions& options) {
  params.validate();
  Protocol p;
  p.omega_initial = Frequency::angular(params.omega1);
  p.mass = params.mass;
  p.calibration = params.calibration;

  const Frequency low = Frequency::angular(params.omega2);
  const Frequency high = p.omega_initial;
  auto jump_wait_jump = [&] {
    p.steps.push_back(FrequencyJump{low});
    p.steps.push_back(Wait{quarter_period(low.angular())});
    p.steps.push_back(FrequencyJump{high});
  };
  auto quarter_high = [&] { p.steps.push_back(Wait{quarter_period(high.angular())}); };
  auto shift = [&] { p.steps.push_back(ShiftOrigin{shift_from_coherent_alpha(options.alpha_i, params)}); };

  switch (which) {
    case Builtin::SMinus2r:
      jump_wait_jump();
      break;
    case Builtin::SPlus2r:
      jump_wait_jump();
      quarter_high();
      break;
    case Builtin::MultiJump: {
      if (options.n_jumps < 1) throw DomainError("multi_jump: n_jumps must be >= 1");
      for (int i = 0; i < options.n_jumps; ++i) {
        const Frequency target = i % 2 == 0 ? low : high;
        p.steps.push_back(FrequencyJump{target});
        if (i + 1 < options.n_jumps) p.steps.push_back(Wait{quarter_period(target.angular())});
      }
      break;
    }
    case Builtin::DisplacedSqueeze:
      jump_wait_jump();
      quarter_high();
      shift();
      break;
    case Builtin::Amplify:
      jump_wait_jump();
      quarter_high();
      shift();
      quarter_high();
      jump_wait_jump();
      break;
  }
  return p;
}

Protocol inverse_protocol(const Protocol& protocol) {
  protocol.validate();

  // Frequency in force before each step, and whether each shift is matched later.
  std::vector<Frequency> before(protocol.steps.size());
  std::vector<bool> matched(protocol.steps.size(), false);
  std::vector<std::size_t> stack;
  Frequency current = protocol.omega_initial;
  for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
    before[i] = current;
    const ProtocolStep& s = protocol.steps[i];
    if (const auto* j = std::get_if<FrequencyJump>(&s)) current = j->target;
    if (std::holds_alternative<ShiftOrigin>(s)) stack.push_back(i);
    if (std::holds_alternative<UnshiftOrigin>(s)) {
      matched[stack.back()] = true;
      stack.pop_back();
    }
  }

  Protocol inv;
  inv.omega_initial = current;
  inv.mass = protocol.mass;
  inv.calibration = protocol.calibration;

  // Distance of each unshift from its shift, to recover d when reversing.
  std::vector<double> shift_of_unshift(protocol.steps.size(), 0.0);
  stack.clear();
  for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
    if (std::holds_alternative<ShiftOrigin>(protocol.steps[i])) stack.push_back(i);
    if (std::holds_alternative<UnshiftOrigin>(protocol.steps[i])) {
      shift_of_unshift[i] = std::get<ShiftOrigin>(protocol.steps[stack.back()]).d;
      stack.pop_back();
    }
  }

  for (std::size_t k = protocol.steps.size(); k-- > 0;) {
    const ProtocolStep& s = protocol.steps[k];
    std::visit(Overloaded{
                   [&](const FrequencyJump&) { inv.steps.push_back(FrequencyJump{before[k]}); },
                   [&](const Wait& w) {
                     const double omega = before[k].angular();
                     const double period = constants::kTwoPi / omega;
                     const double cycles = std::ceil(w.tau / period - 1e-12);
                     inv.steps.push_back(Wait{std::max(0.0, cycles * period - w.tau)});
                   },
                   [&](const ShiftOrigin& sh) {
                     if (matched[k])
                       inv.steps.push_back(UnshiftOrigin{});
                     else
                       inv.steps.push_back(ShiftOrigin{-sh.d});
                   },
                   [&](const UnshiftOrigin&) { inv.steps.push_back(ShiftOrigin{shift_of_unshift[k]}); },
               },
               s);
  }
  return inv;
}

NumberDistribution implied_distribution(const ProtocolResult& summary, double nbar0, int n_max, int fock_dim) {
  const SqueezeParams sq = squeeze_params_from_pair(summary.pair);
  const Complex alpha = summary.displacement;
  const int l_max = thermal_cutoff(nbar0);
  constexpr double kNegligible = 1e-14;
  constexpr int kClosedFormLimit = 60;

  if (n_max <= kClosedFormLimit && l_max <= kClosedFormLimit) {
    if (std::abs(alpha) < kNegligible) {
      return weighted_distribution([r = sq.r](int n, int l) { return squeeze_matrix_element_sq(n, l, r); }, nbar0,
                                   n_max, l_max);
    }
    if (sq.r < kNegligible) {
      return weighted_distribution([alpha](int n, int l) { return displacement_matrix_element_sq(n, l, alpha); },
                                   nbar0, n_max, l_max);
    }
  }
  if (n_max >= fock_dim) throw DimensionError("implied_distribution: n_max must be below fock_dim");

  // Displaced squeezed thermal state: P_n = sum_l P_th(l) |<n|D(alpha) S(xi)|l>|^2.
  const ComplexMatrix cols = gaussian_columns(fock_dim, sq.r, sq.theta, alpha, l_max);
  std::vector<double> full(static_cast<std::size_t>(fock_dim), 0.0);
  const double x = nbar0 / (1.0 + nbar0);
  double w = 1.0 / (1.0 + nbar0);
  for (int l = 0; l <= l_max; ++l, w *= x)
    for (int n = 0; n < fock_dim; ++n) full[static_cast<std::size_t>(n)] += w * std::norm(cols(n, l));

  double tail = 0.0;
  for (int n = fock_dim - kGuardBand; n < fock_dim; ++n) tail += full[static_cast<std::size_t>(n)];
  if (tail > kTailTolerance)
    throw TruncationError("implied_distribution: guard-band population " + std::to_string(tail) + " at D = " +
                              std::to_string(fock_dim),
                          2 * fock_dim);
  full.resize(static_cast<std::size_t>(n_max) + 1);
  return NumberDistribution(std::move(full));
}

}  // namespace fjsq
