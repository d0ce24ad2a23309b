#include <algorithm>
#include <array>
#include <cmath>

#include "fjsq/errors.hpp"
#include "fjsq/fock.hpp"

namespace fjsq {
namespace {

// Backward-error bounds for the [m/m] Pade approximants in double precision
// (Higham 2005, "The scaling and squaring method for the matrix exponential revisited").
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const ComplexMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Low-order approximants share one shape: U = A * sum(b_odd A^2k), V = sum(b_even A^2k).
template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ident;
  ComplexMatrix u_sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < N / 2; ++k) {
    u_sum += b[2 * k + 1] * power;
    v += b[2 * k] * power;
    power = power * a2;
  }
  const ComplexMatrix u = a * u_sum;
  return (v - u).partialPivLu().solve(v + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const auto n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const ComplexMatrix u =
      a * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                          b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

ComplexMatrix matrix_exponential(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_exponential: matrix is not square");
  if (!m.allFinite()) throw NumericError("matrix_exponential: non-finite entries");
  if (m.rows() == 0) return m;

  const double norm = one_norm(m);
  if (norm <= kTheta3) return pade_low(m, std::array<double, 4>{120.0, 60.0, 12.0, 1.0});
  if (norm <= kTheta5)
    return pade_low(m, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  if (norm <= kTheta7)
    return pade_low(m, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                             25200.0, 1512.0, 56.0, 1.0});
  if (norm <= kTheta9)
    return pade_low(m, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                              302702400.0, 30270240.0, 2162160.0, 110880.0,
                                              3960.0, 90.0, 1.0});

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  ComplexMatrix result = pade13(m / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;

  if (!result.allFinite()) throw NumericError("matrix_exponential: overflow");
  return result;
}

}  // namespace fjsq
