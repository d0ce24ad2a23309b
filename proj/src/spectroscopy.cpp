#include "fjsq/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fjsq/analytic.hpp"
#include "fjsq/constants.hpp"
#include "fjsq/errors.hpp"

namespace fjsq {
namespace {

constexpr double kThermalTailTolerance = 1e-8;

double thermal_weight(double nbar0, int l) {
  return std::pow(nbar0 / (1.0 + nbar0), l) / (1.0 + nbar0);
}

}  // namespace

RabiParams RabiParams::experiment_defaults() {
  RabiParams p;
  p.omega01 = constants::angular(5.4e3);
  p.gamma = 9.8e3;
  p.pulse_t = 0.4e-3;
  p.n_max = 20;
  return p;
}

void RabiParams::validate() const {
  if (!(omega01 > 0.0)) throw DomainError("RabiParams: omega01 must be positive");
  if (!(gamma >= 0.0)) throw DomainError("RabiParams: gamma must be non-negative");
  if (!(pulse_t > 0.0)) throw DomainError("RabiParams: pulse_t must be positive");
  if (n_max < 10) throw DomainError("RabiParams: n_max must be >= 10");
}

int thermal_cutoff(double nbar0, double tolerance) {
  if (!(nbar0 >= 0.0)) throw DomainError("thermal_cutoff: nbar0 must be >= 0");
  if (nbar0 == 0.0) return 0;
  // Tail beyond l_max is x^(l_max + 1).
  const double x = nbar0 / (1.0 + nbar0);
  int l_max = std::max(0, static_cast<int>(std::ceil(std::log(tolerance) / std::log(x))) - 1);
  while (std::pow(x, l_max + 1) >= tolerance) ++l_max;
  return l_max;
}

NumberDistribution weighted_distribution(const MatrixElementFn& element, double nbar0, int n_max, int l_max) {
  if (!(nbar0 >= 0.0)) throw DomainError("weighted_distribution: nbar0 must be >= 0");
  if (n_max < 0 || l_max < 0) throw DomainError("weighted_distribution: cutoffs must be >= 0");
  const double tail = nbar0 == 0.0 ? 0.0 : std::pow(nbar0 / (1.0 + nbar0), l_max + 1);
  if (tail >= kThermalTailTolerance)
    throw CutoffError("weighted_distribution: thermal tail " + std::to_string(tail) + " beyond l_max = " +
                      std::to_string(l_max) + " exceeds 1e-8");

  std::vector<double> probs(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int l = 0; l <= l_max; ++l) {
    const double w = thermal_weight(nbar0, l);
    if (w == 0.0) continue;
    for (int n = 0; n <= n_max; ++n) probs[static_cast<std::size_t>(n)] += w * element(n, l);
  }
  return NumberDistribution(std::move(probs));
}

SidebandResult sideband_populations(const NumberDistribution& dist, const RabiParams& rabi) {
  rabi.validate();
  const double contrast = std::exp(-rabi.gamma * rabi.pulse_t);
  const double wt = rabi.omega01 * rabi.pulse_t;
  SidebandResult out;
  for (int n = 0; n <= rabi.n_max; ++n) {
    const double p = dist[n];
    out.p_plus += 0.5 * p * (1.0 - contrast * std::cos(std::sqrt(n + 1.0) * wt));
    if (n >= 1) out.p_minus += 0.5 * p * (1.0 - contrast * std::cos(std::sqrt(static_cast<double>(n)) * wt));
  }
  if (!(out.p_plus > 0.0)) throw ContractError("sideband_populations: blue-sideband population vanishes");
  out.ratio = out.p_minus / out.p_plus;
  return out;
}

double nbar_from_R(double ratio) {
  if (!(ratio >= 0.0) || !(ratio < 1.0))
    throw DomainError("nbar_from_R: R must lie in [0, 1), got " + std::to_string(ratio));
  return ratio / (1.0 - ratio);
}

double DecoherenceParams::coherent_weight() const { return std::exp(-t_prime / Gamma); }

NumberDistribution amplified_distribution_decohered(Complex alpha_f, double nbar0, const DecoherenceParams& dec,
                                                    int n_max) {
  if (!(dec.Gamma > 0.0)) throw DomainError("amplified_distribution_decohered: Gamma must be positive");
  if (!(dec.t_prime >= 0.0)) throw DomainError("amplified_distribution_decohered: t' must be non-negative");

  const double w = dec.coherent_weight();
  const NumberDistribution coherent = weighted_distribution(
      [alpha_f](int n, int l) { return displacement_matrix_element_sq(n, l, alpha_f); }, nbar0, n_max,
      thermal_cutoff(nbar0));

  const double nbar_th = nbar0 + std::norm(alpha_f);
  std::vector<double> probs(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    probs[static_cast<std::size_t>(n)] = w * coherent[n] + (1.0 - w) * thermal_weight(nbar_th, n);
  return NumberDistribution(std::move(probs));
}

double rabi_flop_model(double t, const RabiFlopParams& p) {
  if (!(t >= 0.0)) throw DomainError("rabi_flop_model: t must be >= 0");
  return p.A + p.B * std::exp(-p.gamma * t) * std::sin(p.omega01 * t + p.Theta) + p.C * (1.0 - std::exp(-t / p.t2));
}

}  // namespace fjsq
