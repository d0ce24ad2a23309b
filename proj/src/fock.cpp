#include "fjsq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fjsq/errors.hpp"

namespace fjsq {
namespace {

void require_dim(int dim, const char* who) {
  if (dim < 2) throw DimensionError(std::string(who) + ": dimension must be >= 2, got " + std::to_string(dim));
}

// Smallest dimension (multiple of 8, at least `start`) whose guard band holds
// less than kTailTolerance of the given distribution. `next(n, p_n)` yields p_{n+1}.
template <class Next>
int advisory_dimension(double p0, Next next, int start) {
  constexpr int kCeiling = 1 << 16;
  double kept = 0.0;
  double p = p0;
  int n = 0;
  for (int dim = 8; dim <= kCeiling; dim += 8) {
    for (; n < dim - kGuardBand; ++n) {
      kept += p;
      p = next(n, p);
    }
    if (dim >= start && 1.0 - kept < kTailTolerance) return dim;
  }
  return kCeiling;
}

int squeeze_advisory(double r, int start) {
  const double t2 = std::tanh(r) * std::tanh(r);
  // Squeezed vacuum: P_{2m} = sech(r) (2m)! / (2^m m!)^2 tanh^{2m}(r); odd levels vanish.
  return advisory_dimension(
      1.0 / std::cosh(r),
      [t2, odd_carry = 0.0](int n, double p) mutable {
        if (n % 2 == 0) {
          odd_carry = p * t2 * (n + 1.0) / (n + 2.0);
          return 0.0;
        }
        return odd_carry;
      },
      start);
}

int poisson_advisory(double mean, int start) {
  return advisory_dimension(
      std::exp(-mean), [mean](int n, double p) { return p * mean / (n + 1.0); }, start);
}

double column_tail(const ComplexMatrix& u, int column) {
  const int dim = static_cast<int>(u.rows());
  double tail = 0.0;
  for (int n = dim - kGuardBand; n < dim; ++n) tail += std::norm(u(n, column));
  return tail;
}

}  // namespace

LadderOperators ladder_operators(int dim) {
  require_dim(dim, "ladder_operators");
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ComplexMatrix a_dag = a.adjoint();
  return {std::move(a), std::move(a_dag)};
}

ComplexMatrix squeeze_operator_exact(double r, double theta, int dim) {
  require_dim(dim, "squeeze_operator_exact");
  if (!std::isfinite(r) || !std::isfinite(theta)) throw NumericError("squeeze_operator_exact: non-finite parameter");
  if (std::abs(r) > 3.0) throw DomainError("squeeze_operator_exact: |r| must be <= 3");

  const auto [a, a_dag] = ladder_operators(dim);
  const Complex xi = std::polar(r, 2.0 * theta);
  const ComplexMatrix generator = 0.5 * (std::conj(xi) * (a * a) - xi * (a_dag * a_dag));
  ComplexMatrix s = matrix_exponential(generator);

  if (dim > kGuardBand && column_tail(s, 0) > kTailTolerance) {
    throw TruncationError("squeeze_operator_exact: r = " + std::to_string(r) + " populates the guard band at D = " +
                              std::to_string(dim),
                          squeeze_advisory(std::abs(r), dim + 8));
  }
  return s;
}

ComplexMatrix displacement_operator_exact(Complex alpha, int dim) {
  require_dim(dim, "displacement_operator_exact");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw NumericError("displacement_operator_exact: non-finite alpha");

  const auto [a, a_dag] = ladder_operators(dim);
  ComplexMatrix d = matrix_exponential(alpha * a_dag - std::conj(alpha) * a);

  if (dim > kGuardBand && column_tail(d, 0) > kTailTolerance) {
    throw TruncationError("displacement_operator_exact: |alpha| = " + std::to_string(std::abs(alpha)) +
                              " populates the guard band at D = " + std::to_string(dim),
                          poisson_advisory(std::norm(alpha), dim + 8));
  }
  return d;
}

ComplexMatrix rotation_operator(double phase, int dim) {
  require_dim(dim, "rotation_operator");
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) u(n, n) = std::polar(1.0, -phase * n);
  return u;
}

ComplexMatrix free_evolution_operator(double omega, double tau, int dim) {
  if (!(omega > 0.0)) throw DomainError("free_evolution_operator: omega must be positive");
  if (!(tau >= 0.0)) throw DomainError("free_evolution_operator: tau must be non-negative");
  return rotation_operator(omega * tau, dim);
}

ThermalState thermal_density_matrix(double nbar0, int dim) {
  require_dim(dim, "thermal_density_matrix");
  if (!(nbar0 >= 0.0) || !std::isfinite(nbar0)) throw DomainError("thermal_density_matrix: nbar0 must be >= 0");

  const double ratio = nbar0 / (1.0 + nbar0);
  // Weights (1 - x) x^n sum to 1 - x^D over the truncated space.
  const double lost = std::pow(ratio, dim);
  ThermalState state;
  state.rho = ComplexMatrix::Zero(dim, dim);
  double weight = 1.0 / (1.0 + nbar0);
  for (int n = 0; n < dim; ++n) {
    state.rho(n, n) = weight / (1.0 - lost);
    weight *= ratio;
  }
  state.renormalization = lost;
  return state;
}

NumberDistribution::NumberDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  for (double& p : probs_) {
    if (p < 0.0) {
      if (p < -1e-12) throw ContractError("NumberDistribution: negative probability " + std::to_string(p));
      p = 0.0;
    }
  }
}

double NumberDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

double NumberDistribution::mean() const {
  double m = 0.0;
  for (int n = 0; n < size(); ++n) m += n * probs_[n];
  return m;
}

double NumberDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (int n = 0; n < size(); ++n) v += (n - m) * (n - m) * probs_[n];
  return v;
}

double NumberDistribution::tail_mass(int levels) const {
  double t = 0.0;
  for (int n = std::max(0, size() - levels); n < size(); ++n) t += probs_[n];
  return t;
}

void check_density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) throw DimensionError("density matrix must be square with D >= 2");
  if (!rho.allFinite()) throw NumericError("density matrix has non-finite entries");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw ContractError("density matrix is not Hermitian (defect " + std::to_string(asym) + ")");
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) throw ContractError("density matrix trace " + std::to_string(trace) + " != 1");
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -1e-10) throw ContractError("density matrix has negative eigenvalue " + std::to_string(min_eig));
}

NumberDistribution number_distribution(const ComplexMatrix& rho) {
  check_density(rho);
  std::vector<double> probs(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index n = 0; n < rho.rows(); ++n) probs[static_cast<std::size_t>(n)] = std::max(0.0, rho(n, n).real());
  return NumberDistribution(std::move(probs));
}

ComplexMatrix apply_unitary(const ComplexMatrix& u, const ComplexMatrix& rho) {
  if (u.rows() != u.cols() || rho.rows() != rho.cols() || u.rows() != rho.rows())
    throw DimensionError("apply_unitary: dimension mismatch (" + std::to_string(u.rows()) + " vs " +
                         std::to_string(rho.rows()) + ")");
  ComplexMatrix out = u * rho * u.adjoint();
  out = (0.5 * (out + out.adjoint())).eval();
  const double drift = std::abs(out.trace() - rho.trace());
  if (drift > 1e-8) throw ContractError("apply_unitary: trace drift " + std::to_string(drift));
  return out;
}

double tail_mass(const ComplexMatrix& rho, int levels) {
  const auto dim = static_cast<int>(rho.rows());
  double t = 0.0;
  for (int n = std::max(0, dim - levels); n < dim; ++n) t += rho(n, n).real();
  return t;
}

void check_tail(const ComplexMatrix& rho, const char* context) {
  const double t = tail_mass(rho);
  if (t > kTailTolerance) {
    const auto dim = static_cast<int>(rho.rows());
    throw TruncationError(std::string(context) + ": guard-band population " + std::to_string(t) +
                              " exceeds tail-mass guard at D = " + std::to_string(dim),
                          2 * dim);
  }
}

double unitarity_defect(const ComplexMatrix& u, int guard) {
  const auto keep = std::max<Eigen::Index>(1, u.rows() - guard);
  const ComplexMatrix prod = u.adjoint() * u;
  const ComplexMatrix block = prod.topLeftCorner(keep, keep) - ComplexMatrix::Identity(keep, keep);
  return block.cwiseAbs().maxCoeff();
}

double total_variation(const NumberDistribution& p, const NumberDistribution& q) {
  const int n = std::max(p.size(), q.size());
  double tv = 0.0;
  for (int i = 0; i < n; ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace fjsq
