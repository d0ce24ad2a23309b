#pragma once

// Closed-form physics of the frequency-jump oscillator: Bogoliubov pairs and
// their composition, squeeze/displacement matrix elements, squeezed-thermal
// moments, lattice anharmonicity and geometric conversions.

#include <complex>
#include <optional>

namespace fjsq {

using Complex = std::complex<double>;

/// Heisenberg summary of a Gaussian unitary W: W^dagger a W = u a - v a^dagger.
///
/// A downward frequency jump gives real u, v > 0, matching the jump transform
/// a_new = u a_old - v a_old^dagger. |u|^2 - |v|^2 = 1 for every valid pair.
struct BogoliubovPair {
  Complex u{1.0, 0.0};
  Complex v{0.0, 0.0};

  static BogoliubovPair identity() { return {}; }
  /// | |u|^2 - |v|^2 - 1 |
  double invariant_defect() const;
  /// Pair of W^dagger.
  BogoliubovPair inverse() const;
  /// ln|u + v|; equals the squeeze amplitude when the phases of u and v align.
  double aligned_log_amplitude() const;
};

struct JumpTransform {
  BogoliubovPair pair;
  /// ln(omega_from / omega_to) / 2; negative for an upward jump.
  double r = 0.0;
};

JumpTransform bogoliubov_from_jump(double omega_from, double omega_to);

/// Follows `pair` with free oscillation through `phase` = omega * tau radians.
BogoliubovPair compose_wait(const BogoliubovPair& pair, double phase);

/// Follows `pair` with the transform `jump` (SU(1,1) product, jump applied last).
BogoliubovPair compose_jump(const BogoliubovPair& pair, const BogoliubovPair& jump);

struct SqueezeParams {
  double r = 0.0;      ///< amplitude, >= 0
  double theta = 0.0;  ///< angle in [0, pi); xi = r exp(2 i theta)
};

/// Squeeze part of a pair: r = asinh|v|, theta = (arg u + arg v) / 2 mod pi.
/// A fresh downward jump yields theta = 0 (position squeezing).
SqueezeParams squeeze_params_from_pair(const BogoliubovPair& pair);

/// |<n|S(r)|l>|^2 for real r; zero when n + l is odd. Requires 0 <= n, l <= 60 and |r| <= 3.
double squeeze_matrix_element_sq(int n, int l, double r);

/// |<n|D(alpha)|l>|^2. Requires 0 <= n, l <= 60 and |alpha| <= 6.
double displacement_matrix_element_sq(int n, int l, Complex alpha);

struct SqueezedThermalMoments {
  double nbar_st = 0.0;
  double dnbar_st = 0.0;
};

/// Mean and standard deviation of the occupation of S(s) rho_th(nbar0) S(s)^dagger.
SqueezedThermalMoments squeezed_thermal_moments(double nbar0, double s);

/// 10 log10(exp(4 r)).
double squeezing_db(double r);
/// Inverse of squeezing_db.
double squeeze_from_db(double db);

/// Physical configuration of the lattice oscillator (SI units, angular frequencies).
struct TrapParams {
  double omega1 = 0.0;              ///< rad/s, initial trap frequency
  double omega2 = 0.0;              ///< rad/s, jump target frequency
  double mass = 0.0;                ///< kg
  double lattice_wavenumber = 0.0;  ///< 1/m
  double V0 = 0.0;                  ///< J, lattice depth
  double calibration = 1.0;         ///< multiplies the ground-state extent x0
  /// Overrides the recoil energy hbar^2 k^2 / 2m when set (J).
  std::optional<double> recoil_override;

  /// 93 kHz / 23 kHz trap of 85Rb in a 1064 nm lattice, V0 = h 1.05 MHz, E_R = h 2 kHz.
  static TrapParams experiment_defaults();

  double recoil_energy() const;
  /// q = V0 / 4 E_R
  double q() const;
  /// 4 sqrt(q) E_R / hbar
  double harmonic_omega() const;
  /// Throws DomainError on non-positive frequencies, mass or depth.
  void validate() const;
};

/// Three-term asymptotic lattice eigenenergy E_n / E_R. Throws DomainError for q < 1.
double mathieu_energy(int n, double q);

/// E_{n+1} - E_n = hbar omega - (n + 1) E_R, in joules.
double energy_gap(int n, double omega, double recoil_energy);

/// Number of levels with three-term energy at or below V0.
int bound_state_count(const TrapParams& params);

/// sqrt(hbar / 2 m omega)
double ground_state_extent(double omega, double mass);

/// alpha = d / (2 calibration x0(omega1)).
double coherent_alpha_from_shift(double d, const TrapParams& params);
/// d such that coherent_alpha_from_shift(d) == alpha.
double shift_from_coherent_alpha(double alpha, const TrapParams& params);
/// Calibration factor that maps the shift d onto the coherent amplitude alpha.
double calibration_for_anchor(double d, double alpha, const TrapParams& params);

struct GroundStateWidths {
  double x0 = 0.0;           ///< m, rms extent of the omega1 ground state
  double sigma_v = 0.0;      ///< m/s, velocity standard deviation of the state
  double width_1e2_v = 0.0;  ///< m/s, 1/e^2 half-width of the velocity density (= 2 sigma_v)
  double thermal_broadening = 1.0;  ///< sqrt(2 nbar0 + 1)
};

/// Velocity spread after squeezing by `r_total` (> 0 narrows momentum) from a
/// thermal state of mean occupation nbar0.
GroundStateWidths ground_state_widths(const TrapParams& params, double nbar0, double r_total);

}  // namespace fjsq
