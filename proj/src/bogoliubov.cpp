#include <cmath>
#include <numbers>

#include "fjsq/analytic.hpp"
#include "fjsq/errors.hpp"

namespace fjsq {

double BogoliubovPair::invariant_defect() const { return std::abs(std::norm(u) - std::norm(v) - 1.0); }

BogoliubovPair BogoliubovPair::inverse() const { return {std::conj(u), -v}; }

double BogoliubovPair::aligned_log_amplitude() const { return std::log(std::abs(u + v)); }

JumpTransform bogoliubov_from_jump(double omega_from, double omega_to) {
  if (!(omega_from > 0.0) || !(omega_to > 0.0) || !std::isfinite(omega_from) || !std::isfinite(omega_to))
    throw DomainError("bogoliubov_from_jump: frequencies must be positive and finite");
  const double norm = 2.0 * std::sqrt(omega_from * omega_to);
  JumpTransform out;
  out.pair.u = (omega_from + omega_to) / norm;
  out.pair.v = (omega_from - omega_to) / norm;
  out.r = 0.5 * std::log(omega_from / omega_to);
  return out;
}

BogoliubovPair compose_wait(const BogoliubovPair& pair, double phase) {
  const Complex rot = std::polar(1.0, -phase);
  return {pair.u * rot, pair.v * rot};
}

BogoliubovPair compose_jump(const BogoliubovPair& pair, const BogoliubovPair& jump) {
  // [[u, -v], [-v*, u*]] matrices multiply as M_jump * M_pair.
  return {jump.u * pair.u + jump.v * std::conj(pair.v), jump.u * pair.v + jump.v * std::conj(pair.u)};
}

SqueezeParams squeeze_params_from_pair(const BogoliubovPair& pair) {
  SqueezeParams sp;
  const double mag = std::abs(pair.v);
  sp.r = std::asinh(mag);
  if (mag < 1e-15) return sp;
  double theta = std::fmod(0.5 * (std::arg(pair.u) + std::arg(pair.v)), std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  if (std::numbers::pi - theta < 1e-12) theta = 0.0;
  sp.theta = theta;
  return sp;
}

SqueezedThermalMoments squeezed_thermal_moments(double nbar0, double s) {
  if (!(nbar0 >= 0.0)) throw DomainError("squeezed_thermal_moments: nbar0 must be >= 0");
  const double sh = std::sinh(s);
  const double sh2 = std::sinh(2.0 * s);
  SqueezedThermalMoments m;
  m.nbar_st = nbar0 * std::cosh(2.0 * s) + sh * sh;
  const double var = (nbar0 * nbar0 + nbar0) * std::cosh(4.0 * s) + 0.5 * sh2 * sh2;
  m.dnbar_st = std::sqrt(var);
  return m;
}

double squeezing_db(double r) { return 40.0 * r / std::numbers::ln10; }

double squeeze_from_db(double db) { return db * std::numbers::ln10 / 40.0; }

}  // namespace fjsq
