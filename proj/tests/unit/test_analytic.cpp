#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fjsq/analytic.hpp"
#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"
#include "fjsq/fock.hpp"
#include "fjsq/oracle/lattice_bands.hpp"
#include "oracles.hpp"

using namespace fjsq;

namespace {

const double kOmega1 = constants::angular(93e3);
const double kOmega2 = constants::angular(23e3);

BogoliubovPair jump(double from, double to) { return bogoliubov_from_jump(from, to).pair; }

// Quarter-wait double jump with single-jump amplitude r.
BogoliubovPair double_jump(double r, double phase) {
  const double ratio = std::exp(2.0 * r);
  return compose_jump(compose_wait(jump(ratio, 1.0), phase), jump(1.0, ratio));
}

}  // namespace

TEST(Jump, EqualFrequenciesGiveIdentity) {
  const JumpTransform j = bogoliubov_from_jump(kOmega1, kOmega1);
  EXPECT_DOUBLE_EQ(j.pair.u.real(), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(j.pair.v), 0.0);
  EXPECT_DOUBLE_EQ(j.r, 0.0);
}

TEST(Jump, TrapFrequenciesGiveTwoR) {
  const JumpTransform j = bogoliubov_from_jump(kOmega1, kOmega2);
  EXPECT_NEAR(2.0 * j.r, 1.397, 1e-3);
  EXPECT_NEAR(2.0 * j.r, std::log(93.0 / 23.0), 1e-14);
  EXPECT_GT(j.pair.u.real(), 0.0);
  EXPECT_GT(j.pair.v.real(), 0.0);
  for (double ratio : {0.2, 0.9, 1.0, 1.7, 4.04, 10.0})
    EXPECT_LT(bogoliubov_from_jump(ratio, 1.0).pair.invariant_defect(), 1e-12) << ratio;
  EXPECT_THROW(bogoliubov_from_jump(-1.0, 1.0), DomainError);
}

TEST(Compose, WaitAndJumpIdentities) {
  const BogoliubovPair p = jump(kOmega1, kOmega2);
  const BogoliubovPair same = compose_wait(p, 0.0);
  EXPECT_EQ(same.u, p.u);
  EXPECT_EQ(same.v, p.v);
  const BogoliubovPair id = compose_jump(p, BogoliubovPair::identity());
  EXPECT_LT(std::abs(id.u - p.u) + std::abs(id.v - p.v), 1e-15);
  const BogoliubovPair back = compose_jump(p, jump(kOmega2, kOmega1));
  EXPECT_LT(std::abs(back.u - 1.0) + std::abs(back.v), 1e-12);
}

TEST(Compose, HalfWaitUndoesQuarterWaitDoubles) {
  const double r = 0.5 * std::log(93.0 / 23.0);
  const BogoliubovPair half = double_jump(r, std::numbers::pi);
  EXPECT_LT(squeeze_params_from_pair(half).r, 1e-12);
  const BogoliubovPair quarter = double_jump(r, std::numbers::pi / 2.0);
  EXPECT_NEAR(squeeze_params_from_pair(quarter).r, 2.0 * r, 1e-12);
  EXPECT_NEAR(squeeze_params_from_pair(quarter).r, quarter.aligned_log_amplitude(), 1e-10);
}

TEST(Compose, MatchesPrimedCoefficients) {
  // u' = u^2 e^{-i phi} - v^2 e^{i phi},  v' = -2 i u v sin(phi)
  const double r = 0.39;
  const double u = std::cosh(r);
  const double v = std::sinh(r);
  for (double phi : {0.0, 0.3, std::numbers::pi / 2.0, 2.0}) {
    const BogoliubovPair p = compose_jump(compose_wait(jump(std::exp(2 * r), 1.0), phi), jump(1.0, std::exp(2 * r)));
    const Complex u_prime = u * u * std::polar(1.0, -phi) - v * v * std::polar(1.0, phi);
    const Complex v_prime = Complex(0.0, -2.0 * u * v * std::sin(phi));
    EXPECT_LT(std::abs(p.u - u_prime), 1e-12) << phi;
    EXPECT_LT(std::abs(p.v - v_prime), 1e-12) << phi;
  }
}

TEST(Compose, MultiJumpAmplitudeGrowsLinearly) {
  const double r = 0.39;
  const double ratio = std::exp(2.0 * r);
  for (int n = 1; n <= 6; ++n) {
    BogoliubovPair p;
    for (int k = 0; k < n; ++k) {
      p = compose_jump(p, k % 2 == 0 ? jump(ratio, 1.0) : jump(1.0, ratio));
      if (k + 1 < n) p = compose_wait(p, std::numbers::pi / 2.0);
    }
    EXPECT_NEAR(squeeze_params_from_pair(p).r, n * 0.39, 1e-10) << n;
    EXPECT_LT(p.invariant_defect(), 1e-11);
  }
}

TEST(Compose, QuarterWaitAgreesWithFockEvolution) {
  // Fock route: S(r) then rotation by pi/2 then S(-r); amplitude from the vacuum occupation.
  const double r = 0.5 * std::log(93.0 / 23.0);
  const int dim = 160;
  const ref::Matrix s = ref::squeeze(r, 0.0, dim);
  ref::Matrix rot = ref::Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) rot(n, n) = std::polar(1.0, -std::numbers::pi / 2.0 * n);
  const ref::Matrix u = s.adjoint() * rot * s;
  const double p0 = std::norm(u(0, 0));
  const double r_fock = std::acosh(1.0 / p0);
  EXPECT_NEAR(r_fock, squeeze_params_from_pair(double_jump(r, std::numbers::pi / 2.0)).r, 1e-9);
}

TEST(SqueezeParams, Conventions) {
  EXPECT_EQ(squeeze_params_from_pair(BogoliubovPair::identity()).r, 0.0);
  const SqueezeParams sp = squeeze_params_from_pair(jump(kOmega1, kOmega2));
  EXPECT_NEAR(sp.r, 0.5 * std::log(93.0 / 23.0), 1e-14);
  EXPECT_NEAR(sp.theta, 0.0, 1e-14);
}

TEST(SqueezeElement, ClosedFormCases) {
  EXPECT_NEAR(squeeze_matrix_element_sq(0, 0, 0.5), 1.0 / std::cosh(0.5), 1e-15);
  EXPECT_NEAR(squeeze_matrix_element_sq(0, 0, 0.5), 0.8868, 1e-4);
  EXPECT_EQ(squeeze_matrix_element_sq(1, 0, 0.5), 0.0);
  EXPECT_NEAR(squeeze_matrix_element_sq(2, 0, 0.5), 0.0947, 1e-4);
  EXPECT_EQ(squeeze_matrix_element_sq(3, 3, 0.0), 1.0);
  EXPECT_THROW(squeeze_matrix_element_sq(61, 0, 0.1), DomainError);
  EXPECT_THROW(squeeze_matrix_element_sq(0, 0, 3.1), DomainError);
}

TEST(SqueezeElement, AgreesWithExponentialOracle) {
  const int dim = 256;
  for (double r : {-1.6, -0.7, 0.2, 0.9, 1.6}) {
    const ref::Matrix s = ref::squeeze(r, 0.0, dim);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int l = 0; l <= 20; ++l) worst = std::max(worst, std::abs(squeeze_matrix_element_sq(n, l, r) - std::norm(s(n, l))));
    EXPECT_LT(worst, 1e-8) << "r = " << r;
  }
}

TEST(SqueezeElement, ColumnsSumToOne) {
  for (int l : {0, 3, 10}) {
    double total = 0.0;
    for (int n = 0; n <= 60; ++n) total += squeeze_matrix_element_sq(n, l, 0.4);
    EXPECT_NEAR(total, 1.0, 1e-8) << l;
  }
}

TEST(DisplacementElement, ClosedFormCases) {
  EXPECT_EQ(displacement_matrix_element_sq(2, 2, 0.0), 1.0);
  EXPECT_EQ(displacement_matrix_element_sq(2, 1, 0.0), 0.0);
  for (int n = 0; n < 8; ++n)
    EXPECT_NEAR(displacement_matrix_element_sq(n, 0, 1.0), std::exp(-1.0) / std::tgamma(n + 1.0), 1e-14);
  EXPECT_NEAR(displacement_matrix_element_sq(1, 1, 1.0), 0.0, 1e-12);
  EXPECT_THROW(displacement_matrix_element_sq(0, 0, 6.5), DomainError);
}

TEST(DisplacementElement, AgreesWithExponentialOracle) {
  const int dim = 160;
  for (double a : {0.3, 1.0, 2.2, 3.0}) {
    const Complex alpha = std::polar(a, 1.1);
    const ref::Matrix d = ref::displacement(alpha, dim);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int l = 0; l <= 20; ++l)
        worst = std::max(worst, std::abs(displacement_matrix_element_sq(n, l, alpha) - std::norm(d(n, l))));
    EXPECT_LT(worst, 1e-8) << "alpha = " << a;
  }
}

TEST(Moments, Limits) {
  const SqueezedThermalMoments thermal = squeezed_thermal_moments(0.22, 0.0);
  EXPECT_NEAR(thermal.nbar_st, 0.22, 1e-15);
  EXPECT_NEAR(thermal.dnbar_st, std::sqrt(0.22 * 0.22 + 0.22), 1e-15);
  EXPECT_NEAR(squeezed_thermal_moments(0.0, 0.8).nbar_st, std::pow(std::sinh(0.8), 2), 1e-14);
}

TEST(Moments, AgreeWithDensityMatrixOracle) {
  const SqueezedThermalMoments m = squeezed_thermal_moments(0.22, 1.4);
  EXPECT_NEAR(m.nbar_st, 5.442, 1e-3);
  for (double s : {0.4, 1.0, 1.6}) {
    const ref::Matrix op = ref::squeeze(s, 0.0, 512);
    for (double nbar0 : {0.0, 0.22, 0.5}) {
      const auto p = ref::transformed_thermal(op, nbar0);
      const SqueezedThermalMoments f = squeezed_thermal_moments(nbar0, s);
      EXPECT_LT(std::abs(f.nbar_st - ref::mean(p)) / f.nbar_st, 1e-4) << s << " " << nbar0;
      EXPECT_LT(std::abs(f.dnbar_st - ref::stddev(p)) / f.dnbar_st, 1e-4) << s << " " << nbar0;
    }
  }
}

TEST(Decibels, PerJumpAndDoubleJump) {
  EXPECT_EQ(squeezing_db(0.0), 0.0);
  EXPECT_NEAR(squeeze_from_db(7.0), 0.403, 1e-3);
  EXPECT_NEAR(squeeze_from_db(14.0), 0.806, 1e-3);
  EXPECT_NEAR(squeezing_db(squeeze_from_db(11.3)), 11.3, 1e-12);
  EXPECT_NEAR(squeezing_db(1.0), 10.0 * std::log10(std::exp(4.0)), 1e-12);
}

TEST(Lattice, HarmonicFrequencyAndGap) {
  const TrapParams p = TrapParams::experiment_defaults();
  EXPECT_NEAR(p.q(), 131.25, 1e-9);
  EXPECT_NEAR(p.harmonic_omega() / constants::kTwoPi, 91.7e3, 0.1e3);
  EXPECT_LT(std::abs(p.harmonic_omega() / p.omega1 - 1.0), 0.02);
  const double gap = energy_gap(0, p.omega1, p.recoil_energy());
  EXPECT_NEAR(gap / (constants::kHbar * constants::kTwoPi), 91e3, 1.0);
  EXPECT_NEAR(1.0 - gap / (constants::kHbar * p.omega1), 2.0 / 93.0, 1e-9);
  EXPECT_DOUBLE_EQ(energy_gap(3, p.omega1, 0.0), constants::kHbar * p.omega1);
}

TEST(Lattice, ThreeTermEnergiesTrackDiagonalisation) {
  const double q = 131.25;
  const std::vector<double> exact = oracle::lattice_levels(q);
  // Ground level from the plane-wave oracle.
  EXPECT_NEAR(mathieu_energy(0, q), exact[0], 1e-2);
  EXPECT_NEAR(mathieu_energy(0, q), 22.66, 1e-2);
  for (int n = 0; n <= 6; ++n) EXPECT_NEAR(mathieu_energy(n, q), exact[static_cast<std::size_t>(n)], 0.5) << n;
  EXPECT_THROW(mathieu_energy(0, 0.5), DomainError);
}

TEST(Lattice, BoundStateCount) {
  TrapParams p = TrapParams::experiment_defaults();
  const int count = bound_state_count(p);
  EXPECT_GE(count, 11);
  EXPECT_LE(count, 14);
  EXPECT_LE(std::abs(count - oracle::lattice_bound_count(p.q())), 1);
  int previous = count;
  for (double scale : {1.5, 2.0, 4.0}) {
    TrapParams deeper = p;
    deeper.V0 = p.V0 * scale;
    EXPECT_GE(bound_state_count(deeper), previous);
    previous = bound_state_count(deeper);
  }
}

TEST(Geometry, CoherentAmplitudeFromShift) {
  const TrapParams p = TrapParams::experiment_defaults();
  EXPECT_EQ(coherent_alpha_from_shift(0.0, p), 0.0);
  EXPECT_NEAR(coherent_alpha_from_shift(133e-9, p), 2.63, 0.01 * 2.63);
  EXPECT_NEAR(coherent_alpha_from_shift(29.6e-9, p), 0.585, 0.01 * 0.585);
  TrapParams pinned = p;
  pinned.calibration = calibration_for_anchor(133e-9, 3.0, p);
  EXPECT_NEAR(pinned.calibration, 0.877, 1e-3);
  EXPECT_NEAR(coherent_alpha_from_shift(133e-9, pinned), 3.0, 1e-12);
  EXPECT_NEAR(shift_from_coherent_alpha(coherent_alpha_from_shift(50e-9, pinned), pinned), 50e-9, 1e-20);
}

TEST(Geometry, VelocityWidths) {
  const TrapParams p = TrapParams::experiment_defaults();
  const GroundStateWidths g = ground_state_widths(p, 0.0, 0.0);
  EXPECT_NEAR(g.width_1e2_v * 100.0, 2.95, 0.0295);
  const double r = std::log(2.58);
  EXPECT_NEAR(g.width_1e2_v / ground_state_widths(p, 0.0, r).width_1e2_v, 2.58, 1e-12);
  EXPECT_NEAR(ground_state_widths(p, 0.0, -r).width_1e2_v / g.width_1e2_v, 2.58, 1e-12);
  EXPECT_NEAR(ground_state_widths(p, 0.22, 0.0).thermal_broadening, 1.2, 1e-12);
}
