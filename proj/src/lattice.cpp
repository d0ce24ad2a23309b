#include <cmath>
#include <string>

#include "fjsq/analytic.hpp"
#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"

namespace fjsq {

using constants::kHbar;

TrapParams TrapParams::experiment_defaults() {
  TrapParams p;
  p.omega1 = constants::angular(93e3);
  p.omega2 = constants::angular(23e3);
  p.mass = constants::kRb85Mass;
  p.lattice_wavenumber = constants::kTwoPi / 1064e-9;
  p.V0 = constants::energy_from_hz(1.05e6);
  p.recoil_override = constants::energy_from_hz(2e3);
  p.calibration = 1.0;
  return p;
}

double TrapParams::recoil_energy() const {
  if (recoil_override) return *recoil_override;
  return kHbar * kHbar * lattice_wavenumber * lattice_wavenumber / (2.0 * mass);
}

double TrapParams::q() const { return V0 / (4.0 * recoil_energy()); }

double TrapParams::harmonic_omega() const { return 4.0 * std::sqrt(q()) * recoil_energy() / kHbar; }

void TrapParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(omega1) || !positive(omega2)) throw DomainError("TrapParams: frequencies must be positive");
  if (!positive(mass)) throw DomainError("TrapParams: mass must be positive");
  if (!positive(V0)) throw DomainError("TrapParams: V0 must be positive");
  if (!positive(calibration)) throw DomainError("TrapParams: calibration must be positive");
  if (!recoil_override && !positive(lattice_wavenumber))
    throw DomainError("TrapParams: lattice wavenumber must be positive");
  if (!positive(recoil_energy())) throw DomainError("TrapParams: recoil energy must be positive");
}

double mathieu_energy(int n, double q) {
  if (n < 0) throw DomainError("mathieu_energy: n must be >= 0");
  if (!(q >= 1.0)) throw DomainError("mathieu_energy: asymptotic expansion requires q >= 1, got " + std::to_string(q));
  const double nu = 2.0 * n + 1.0;
  const double sq = std::sqrt(q);
  return 2.0 * nu * sq - (nu * nu + 1.0) / 8.0 - (nu * nu * nu + 3.0 * nu) / (128.0 * sq);
}

double energy_gap(int n, double omega, double recoil_energy) {
  if (n < 0) throw DomainError("energy_gap: n must be >= 0");
  return kHbar * omega - (n + 1) * recoil_energy;
}

int bound_state_count(const TrapParams& params) {
  const double q = params.q();
  const double depth = params.V0 / params.recoil_energy();
  int count = 0;
  double previous = -INFINITY;
  for (int n = 0;; ++n) {
    const double e = mathieu_energy(n, q);
    // The truncated series turns over far above the barrier; stop there as well.
    if (e > depth || e <= previous) break;
    previous = e;
    ++count;
  }
  return count;
}

double ground_state_extent(double omega, double mass) {
  if (!(omega > 0.0) || !(mass > 0.0)) throw DomainError("ground_state_extent: omega and mass must be positive");
  return std::sqrt(kHbar / (2.0 * mass * omega));
}

double coherent_alpha_from_shift(double d, const TrapParams& params) {
  if (!std::isfinite(d)) throw DomainError("coherent_alpha_from_shift: d must be finite");
  return d / (2.0 * params.calibration * ground_state_extent(params.omega1, params.mass));
}

double shift_from_coherent_alpha(double alpha, const TrapParams& params) {
  return alpha * 2.0 * params.calibration * ground_state_extent(params.omega1, params.mass);
}

double calibration_for_anchor(double d, double alpha, const TrapParams& params) {
  if (!(alpha > 0.0) || !(d > 0.0)) throw DomainError("calibration_for_anchor: d and alpha must be positive");
  return d / (2.0 * alpha * ground_state_extent(params.omega1, params.mass));
}

GroundStateWidths ground_state_widths(const TrapParams& params, double nbar0, double r_total) {
  if (!(params.omega1 > 0.0)) throw DomainError("ground_state_widths: omega1 must be positive");
  if (!(nbar0 >= 0.0)) throw DomainError("ground_state_widths: nbar0 must be >= 0");
  GroundStateWidths w;
  w.x0 = ground_state_extent(params.omega1, params.mass);
  w.thermal_broadening = std::sqrt(2.0 * nbar0 + 1.0);
  const double sigma_ground = std::sqrt(kHbar * params.omega1 / (2.0 * params.mass));
  w.sigma_v = sigma_ground * std::exp(-r_total) * w.thermal_broadening;
  w.width_1e2_v = 2.0 * w.sigma_v;
  return w;
}

}  // namespace fjsq
