#pragma once

// Truncated Fock-space numerics. Operators are dense D x D complex matrices in
// the number basis; these exact exponentials serve as the brute-force oracle
// for the closed-form routines in analytic.hpp.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fjsq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Default truncation dimension for protocol runs.
inline constexpr int kDefaultFockDim = 256;
/// Number of top levels treated as the truncation guard band.
inline constexpr int kGuardBand = 8;
/// Maximum population allowed inside the guard band.
inline constexpr double kTailTolerance = 1e-6;

struct LadderOperators {
  ComplexMatrix a;
  ComplexMatrix a_dag;
};

/// Annihilation and creation operators with a(n-1, n) = sqrt(n).
LadderOperators ladder_operators(int dim);

/// exp(M) by scaling and squaring with diagonal Pade approximants.
ComplexMatrix matrix_exponential(const ComplexMatrix& m);

/// S(xi) = exp[(xi* a^2 - xi a_dag^2) / 2] with xi = r exp(2 i theta).
///
/// Rejects parameters whose squeezed vacuum places more than kTailTolerance
/// population in the top kGuardBand levels; the TruncationError carries the
/// smallest dimension that would be accepted.
ComplexMatrix squeeze_operator_exact(double r, double theta, int dim);

/// D(alpha) = exp(alpha a_dag - alpha* a), with the same tail-mass guard as
/// squeeze_operator_exact applied to the coherent state D(alpha)|0>.
ComplexMatrix displacement_operator_exact(Complex alpha, int dim);

/// Diagonal rotation with entries exp(-i n phase).
ComplexMatrix rotation_operator(double phase, int dim);

/// Free oscillation exp(-i n omega tau). The zero-point phase is dropped.
ComplexMatrix free_evolution_operator(double omega, double tau, int dim);

struct ThermalState {
  ComplexMatrix rho;
  /// 1 - (sum of the untruncated Boltzmann weights kept); removed by renormalising.
  double renormalization = 0.0;
};

/// Boltzmann-weighted diagonal state with mean occupation nbar0, renormalised over dim levels.
ThermalState thermal_density_matrix(double nbar0, int dim);

/// Occupation probabilities P_n of a Fock-space state.
class NumberDistribution {
 public:
  NumberDistribution() = default;
  explicit NumberDistribution(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int n) const { return n < size() ? probs_[n] : 0.0; }

  double total() const;
  double mean() const;
  double variance() const;
  /// Population of the top `levels` entries.
  double tail_mass(int levels = kGuardBand) const;

 private:
  std::vector<double> probs_;
};

/// probs[n] = Re(rho_nn), clipped at zero. Throws ContractError for an invalid density matrix.
NumberDistribution number_distribution(const ComplexMatrix& rho);

/// U rho U^dagger, re-Hermitised. Throws DimensionError on mismatched shapes and
/// ContractError if the trace drifts by more than 1e-8.
ComplexMatrix apply_unitary(const ComplexMatrix& u, const ComplexMatrix& rho);

/// Population of rho in the top `levels` Fock states.
double tail_mass(const ComplexMatrix& rho, int levels = kGuardBand);

/// Throws TruncationError naming `context` when tail_mass(rho) exceeds kTailTolerance.
void check_tail(const ComplexMatrix& rho, const char* context);

/// max |(U^dagger U - I)_{ij}| restricted to indices [0, D - guard).
double unitarity_defect(const ComplexMatrix& u, int guard = kGuardBand);

/// Throws ContractError unless rho is Hermitian, positive semidefinite and of unit trace.
void check_density(const ComplexMatrix& rho);

/// Total variation distance 1/2 sum |p_n - q_n| over the common support of two distributions.
double total_variation(const NumberDistribution& p, const NumberDistribution& q);

}  // namespace fjsq
