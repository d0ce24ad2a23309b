#pragma once

// Sideband thermometry: maps Fock-number distributions onto the red/blue
// sideband ratio R = P- / P+ through the Rabi-flopping model.

#include <functional>

#include "fjsq/fock.hpp"

namespace fjsq {

struct RabiParams {
  double omega01 = 0.0;  ///< rad/s, two-photon Rabi frequency of the n = 0 -> 1 sideband
  double gamma = 0.0;    ///< 1/s, decay rate of the Rabi flopping
  double pulse_t = 0.0;  ///< s, Raman pulse duration
  int n_max = 20;        ///< last Fock level included in the sideband sums

  /// 2pi x 5.4 kHz, 9.8 kHz, 0.4 ms, n_max = 20.
  static RabiParams experiment_defaults();
  void validate() const;
};

struct SidebandResult {
  double p_plus = 0.0;   ///< unnormalised blue-sideband population
  double p_minus = 0.0;  ///< unnormalised red-sideband population
  double ratio = 0.0;    ///< R = p_minus / p_plus
};

/// Squared matrix element |<n|M|l>|^2 of some operator M.
using MatrixElementFn = std::function<double(int n, int l)>;

/// Smallest l_max whose thermal tail sum_{l > l_max} P_th(l) is below `tolerance`.
int thermal_cutoff(double nbar0, double tolerance = 1e-8);

/// P_n = sum_{l <= l_max} P_th(l) |<n|M|l>|^2 for n = 0..n_max.
/// Throws CutoffError when the thermal tail beyond l_max exceeds 1e-8.
NumberDistribution weighted_distribution(const MatrixElementFn& element, double nbar0, int n_max, int l_max);

/// Rabi-flopped sideband populations and their ratio. Throws ContractError when P+ vanishes.
SidebandResult sideband_populations(const NumberDistribution& dist, const RabiParams& rabi);

/// Thermal occupation implied by a measured ratio, R / (1 - R). Requires 0 <= R < 1.
double nbar_from_R(double ratio);

struct DecoherenceParams {
  double Gamma = 0.0;    ///< s, decay time of the coherent contribution
  double t_prime = 0.0;  ///< s, total free-oscillation time

  /// exp(-t' / Gamma)
  double coherent_weight() const;
};

/// Amplified displaced-thermal distribution mixed with a thermal state of mean
/// nbar0 + |alpha_f|^2, weighted by exp(-t'/Gamma).
NumberDistribution amplified_distribution_decohered(Complex alpha_f, double nbar0, const DecoherenceParams& dec,
                                                    int n_max);

struct RabiFlopParams {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double gamma = 0.0;    ///< 1/s
  double omega01 = 0.0;  ///< rad/s
  double Theta = 0.0;    ///< rad
  double t2 = 1.0;       ///< s
};

/// A + B exp(-gamma t) sin(omega01 t + Theta) + C (1 - exp(-t / t2)).
double rabi_flop_model(double t, const RabiFlopParams& p);

}  // namespace fjsq
