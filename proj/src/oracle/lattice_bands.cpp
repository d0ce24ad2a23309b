#include "fjsq/oracle/lattice_bands.hpp"

#include <algorithm>

#include <Eigen/Dense>

namespace fjsq::oracle {

std::vector<double> lattice_levels(double q, int harmonics) {
  // Basis exp(2 i j chi), j = -J..J. 4q cos^2 = 2q + q (e^{2i chi} + e^{-2i chi}).
  const int size = 2 * harmonics + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double j = i - harmonics;
    h(i, i) = 4.0 * j * j + 2.0 * q;
    if (i + 1 < size) h(i, i + 1) = h(i + 1, i) = q;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> levels(ev.data(), ev.data() + ev.size());
  std::sort(levels.begin(), levels.end());
  return levels;
}

int lattice_bound_count(double q, int harmonics) {
  const auto levels = lattice_levels(q, harmonics);
  return static_cast<int>(std::count_if(levels.begin(), levels.end(), [q](double e) { return e <= 4.0 * q; }));
}

}  // namespace fjsq::oracle
