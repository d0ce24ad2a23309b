#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fjsq/errors.hpp"
#include "fjsq/protocol.hpp"
#include "fjsq/spectroscopy.hpp"

using namespace fjsq;

namespace {

const TrapParams kTrap = TrapParams::experiment_defaults();

ComplexMatrix vacuum(int dim) {
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

Protocol at_omega1(std::vector<ProtocolStep> steps) {
  Protocol p;
  p.omega_initial = Frequency::angular(kTrap.omega1);
  p.steps = std::move(steps);
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const Frequency kLow = Frequency::angular(kTrap.omega2);
const Frequency kHigh = Frequency::angular(kTrap.omega1);

}  // namespace

TEST(Frequency, StoresHertz) {
  EXPECT_EQ(Frequency::hz(93e3).in_hz(), 93e3);
  EXPECT_NEAR(Frequency::hz(93e3).angular(), 2 * std::numbers::pi * 93e3, 1e-9);
  EXPECT_NEAR(Frequency::angular(kTrap.omega1).in_hz(), 93e3, 1e-9);
}

TEST(RunFock, JumpAndReturnIsIdentity) {
  const ComplexMatrix rho = vacuum(64);
  const ProtocolResult res = run_fock(at_omega1({FrequencyJump{kLow}, FrequencyJump{kHigh}}), rho);
  EXPECT_LT(max_abs(res.final_rho - rho), 1e-8);
  EXPECT_LT(squeeze_params_from_pair(res.pair).r, 1e-12);
}

TEST(RunFock, ShiftUnshiftIsIdentity) {
  const ComplexMatrix rho = thermal_density_matrix(0.22, 64).rho;
  const ProtocolResult res = run_fock(at_omega1({ShiftOrigin{50e-9}, UnshiftOrigin{}}), rho);
  EXPECT_LT(max_abs(res.final_rho - rho), 1e-8);
  EXPECT_LT(std::abs(res.displacement), 1e-15);
}

TEST(RunFock, QuarterWaitDoubleJumpGivesDoubleSqueeze) {
  const int dim = 256;
  const ProtocolResult res = run_fock(builtin_protocol(Builtin::SMinus2r, kTrap), vacuum(dim));
  const NumberDistribution fock = number_distribution(res.final_rho);
  const double two_r = std::log(93.0 / 23.0);
  for (int n = 0; n <= 20; ++n) EXPECT_NEAR(fock[n], squeeze_matrix_element_sq(n, 0, two_r), 1e-9) << n;
}

TEST(RunFock, TruncationNamesStepAndAdvisesDimension) {
  try {
    run_fock(at_omega1({Wait{1e-6}, FrequencyJump{Frequency::hz(2e3)}}), vacuum(32));
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos) << e.what();
    EXPECT_GT(e.advisory_dim(), 32);
  }
}

TEST(RunSymplectic, BuiltinAmplitudes) {
  EXPECT_NEAR(squeeze_params_from_pair(run_symplectic(builtin_protocol(Builtin::SMinus2r, kTrap)).pair).r, 1.397,
              1e-3);
  const ProtocolResult plus = run_symplectic(builtin_protocol(Builtin::SPlus2r, kTrap));
  EXPECT_NEAR(squeeze_params_from_pair(plus.pair).r, std::log(93.0 / 23.0), 1e-12);
  const ProtocolResult minus = run_symplectic(builtin_protocol(Builtin::SMinus2r, kTrap));
  // S(-2r) squeezes the conjugate quadrature of S(+2r).
  EXPECT_NEAR(squeeze_params_from_pair(minus.pair).theta, std::numbers::pi / 2.0, 1e-12);
  EXPECT_NEAR(squeeze_params_from_pair(plus.pair).theta, 0.0, 1e-12);
}

TEST(RunSymplectic, MultiJumpAtShallowRatio) {
  TrapParams trap = kTrap;
  trap.omega2 = trap.omega1 * std::exp(-2.0 * 0.39);
  for (int n = 1; n <= 5; ++n) {
    BuiltinOptions o;
    o.n_jumps = n;
    const ProtocolResult res = run_symplectic(builtin_protocol(Builtin::MultiJump, trap, o));
    EXPECT_NEAR(squeeze_params_from_pair(res.pair).r, n * 0.39, 1e-10) << n;
  }
  BuiltinOptions two;
  EXPECT_EQ(builtin_protocol(Builtin::MultiJump, kTrap, two), builtin_protocol(Builtin::SMinus2r, kTrap));
}

TEST(RunSymplectic, QuarterHalfCycleLaw) {
  double previous = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double phi = std::numbers::pi * k / 40.0;
    const ProtocolResult res = run_symplectic(
        at_omega1({FrequencyJump{kLow}, Wait{phi / kTrap.omega2}, FrequencyJump{kHigh}}));
    const double r = squeeze_params_from_pair(res.pair).r;
    if (k > 0) EXPECT_LT(std::abs(r - previous), 0.15) << "continuity at phi = " << phi;
    EXPECT_LE(r, std::log(93.0 / 23.0) + 1e-12);
    previous = r;
  }
  const auto r_at = [](double phi) {
    return squeeze_params_from_pair(
               run_symplectic(at_omega1({FrequencyJump{kLow}, Wait{phi / kTrap.omega2}, FrequencyJump{kHigh}})).pair)
        .r;
  };
  EXPECT_NEAR(r_at(std::numbers::pi / 2.0), std::log(93.0 / 23.0), 1e-12);
  EXPECT_LT(r_at(std::numbers::pi), 1e-12);
}

TEST(RunSymplectic, AmplificationLaw) {
  EXPECT_LT(std::abs(amplified_alpha(0.67, 0.0) + 0.67), 1e-15);
  EXPECT_NEAR(std::abs(amplified_alpha(0.67, 1.23 / 2.0)), 2.292, 1e-3);

  TrapParams trap = kTrap;
  trap.omega2 = trap.omega1 * std::exp(-1.23);
  BuiltinOptions o;
  o.alpha_i = 0.67;
  const ProtocolResult res = run_symplectic(builtin_protocol(Builtin::Amplify, trap, o));
  EXPECT_NEAR(std::abs(res.displacement), 2.292, 1e-3);
  EXPECT_NEAR(std::abs(res.displacement) / 0.67, std::exp(1.23), 1e-12);
  EXPECT_NEAR(std::abs(std::arg(res.displacement)), std::numbers::pi, 1e-12);
  EXPECT_LT(std::abs(res.displacement - amplified_alpha(0.67, 1.23 / 2.0)), 1e-12);
  EXPECT_LT(squeeze_params_from_pair(res.pair).r, 1e-12);
}

TEST(RunSymplectic, WaitRotatesAboutShiftedMinimum) {
  TrapParams trap = kTrap;
  const double d = shift_from_coherent_alpha(1.0, trap);
  const double half_period = std::numbers::pi / trap.omega1;
  const ProtocolResult res = run_symplectic(at_omega1({ShiftOrigin{d}, Wait{half_period}, UnshiftOrigin{}}));
  // Half an oscillation about the new minimum carries the state to twice the shift.
  EXPECT_NEAR(std::abs(res.displacement), 2.0, 1e-12);
}

TEST(Backends, AgreeForBuiltinsOnThermalInput) {
  const int dim = kDefaultFockDim;
  for (double nbar0 : {0.0, 0.22, 0.5}) {
    const ComplexMatrix rho = thermal_density_matrix(nbar0, dim).rho;
    for (Builtin b : {Builtin::SMinus2r, Builtin::SPlus2r, Builtin::DisplacedSqueeze, Builtin::Amplify}) {
      const ProtocolResult fock = run_fock(builtin_protocol(b, kTrap), rho);
      const NumberDistribution implied = implied_distribution(fock, nbar0, dim - 1, dim);
      EXPECT_LT(total_variation(number_distribution(fock.final_rho), implied), 1e-6)
          << builtin_name(b) << " nbar0 " << nbar0;
    }
  }
}

TEST(Backends, ClosedFormAndSpectralRoutesAgree) {
  const ProtocolResult res = run_symplectic(builtin_protocol(Builtin::SPlus2r, kTrap));
  const NumberDistribution closed = implied_distribution(res, 0.22, 40);
  const NumberDistribution spectral = implied_distribution(res, 0.22, 200, 256);
  for (int n = 0; n <= 40; ++n) EXPECT_NEAR(closed[n], spectral[n], 1e-9) << n;
}

TEST(Reversibility, InverseProtocolRestoresState) {
  const int dim = kDefaultFockDim;
  const ComplexMatrix rho = thermal_density_matrix(0.22, dim).rho;
  for (Builtin b : {Builtin::SMinus2r, Builtin::SPlus2r, Builtin::DisplacedSqueeze, Builtin::Amplify}) {
    Protocol forward = builtin_protocol(b, kTrap);
    if (b == Builtin::DisplacedSqueeze) forward.steps.push_back(UnshiftOrigin{});
    Protocol both = forward;
    const Protocol back = inverse_protocol(forward);
    both.steps.insert(both.steps.end(), back.steps.begin(), back.steps.end());
    const ProtocolResult res = run_fock(both, rho);
    EXPECT_LT(max_abs(res.final_rho - rho), 1e-6) << builtin_name(b);
  }
}

TEST(Validation, RejectsBadProtocols) {
  EXPECT_THROW(run_symplectic(at_omega1({UnshiftOrigin{}})), ContractError);
  EXPECT_THROW(run_symplectic(at_omega1({Wait{-1.0}})), DomainError);
  EXPECT_THROW(run_symplectic(at_omega1({FrequencyJump{Frequency::hz(0.0)}})), DomainError);
  BuiltinOptions o;
  o.n_jumps = 0;
  EXPECT_THROW(builtin_protocol(Builtin::MultiJump, kTrap, o), DomainError);
  EXPECT_THROW(parse_builtin("S_sideways"), DomainError);
}

TEST(Json, RoundTripIsLossless) {
  for (Builtin b : {Builtin::SMinus2r, Builtin::SPlus2r, Builtin::MultiJump, Builtin::DisplacedSqueeze,
                    Builtin::Amplify}) {
    const Protocol p = builtin_protocol(b, kTrap);
    const nlohmann::json doc = protocol_to_json(p);
    EXPECT_EQ(protocol_from_json(nlohmann::json::parse(doc.dump()), kTrap), p) << builtin_name(b);
    EXPECT_EQ(parse_builtin(builtin_name(b)), b);
  }
}

TEST(Json, BuiltinDocuments) {
  const nlohmann::json doc = {{"schema_version", 1}, {"builtin", "amplify"}, {"alpha_i", 0.5}};
  const Protocol p = protocol_from_json(doc, kTrap);
  BuiltinOptions o;
  o.alpha_i = 0.5;
  EXPECT_EQ(p, builtin_protocol(Builtin::Amplify, kTrap, o));
}

TEST(Json, RejectsMalformedDocuments) {
  using nlohmann::json;
  const json ok = {{"schema_version", 1}, {"omega_initial_hz", 93e3}, {"steps", json::array()}};
  EXPECT_NO_THROW(protocol_from_json(ok, kTrap));
  json extra = ok;
  extra["colour"] = "red";
  EXPECT_THROW(protocol_from_json(extra, kTrap), ConfigError);
  json version = ok;
  version["schema_version"] = 2;
  EXPECT_THROW(protocol_from_json(version, kTrap), ConfigError);
  json missing = ok;
  missing.erase("schema_version");
  EXPECT_THROW(protocol_from_json(missing, kTrap), ConfigError);
  json bad_step = ok;
  bad_step["steps"] = json::array({{{"type", "wait"}, {"tau", 1e-6}}});
  EXPECT_THROW(protocol_from_json(bad_step, kTrap), ConfigError);
  json unknown_type = ok;
  unknown_type["steps"] = json::array({{{"type", "teleport"}}});
  EXPECT_THROW(protocol_from_json(unknown_type, kTrap), ConfigError);
  json unmatched = ok;
  unmatched["steps"] = json::array({{{"type", "unshift"}}});
  EXPECT_THROW(protocol_from_json(unmatched, kTrap), ConfigError);
}

TEST(EmptyProtocol, ThermalBaseline) {
  const ProtocolResult res = run_symplectic(at_omega1({}));
  EXPECT_EQ(res.pair.u, Complex(1.0));
  EXPECT_EQ(res.displacement, Complex(0.0));
  const RabiParams rabi = RabiParams::experiment_defaults();
  const double ratio = sideband_populations(implied_distribution(res, 0.22, rabi.n_max), rabi).ratio;
  EXPECT_NEAR(ratio, 0.18, 0.03);
}
