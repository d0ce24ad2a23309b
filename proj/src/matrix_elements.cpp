// Closed-form squared Fock matrix elements of the squeeze and displacement
// operators. Factorials enter through lgamma and the alternating sums are
// accumulated in descending magnitude, in extended precision.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fjsq/analytic.hpp"
#include "fjsq/errors.hpp"

namespace fjsq {
namespace {

constexpr int kMaxLevel = 60;

struct LogTerm {
  long double log_mag;
  int sign;
};

long double lfact(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

// log|sum sign_i exp(log_mag_i)|, or -inf when the sum vanishes.
long double log_abs_sum(std::vector<LogTerm>& terms) {
  if (terms.empty()) return -INFINITY;
  std::sort(terms.begin(), terms.end(), [](const LogTerm& a, const LogTerm& b) { return a.log_mag > b.log_mag; });
  const long double top = terms.front().log_mag;
  long double acc = 0.0L;
  for (const auto& t : terms) acc += t.sign * std::exp(t.log_mag - top);
  if (acc == 0.0L) return -INFINITY;
  return top + std::log(std::fabs(acc));
}

void check_levels(int n, int l, const char* who) {
  if (n < 0 || l < 0 || n > kMaxLevel || l > kMaxLevel)
    throw DomainError(std::string(who) + ": levels must lie in [0, 60], got n = " + std::to_string(n) +
                      ", l = " + std::to_string(l));
}

}  // namespace

double squeeze_matrix_element_sq(int n, int l, double r) {
  check_levels(n, l, "squeeze_matrix_element_sq");
  if (!std::isfinite(r) || std::abs(r) > 3.0) throw DomainError("squeeze_matrix_element_sq: |r| must be <= 3");
  if ((n + l) % 2 != 0) return 0.0;
  // |<n|S(-r)|l>|^2 = |<l|S(r)|n>|^2
  if (r < 0.0) {
    std::swap(n, l);
    r = -r;
  }
  if (r == 0.0) return n == l ? 1.0 : 0.0;

  const long double rl = r;
  const long double log_half_sinh = std::log(std::sinh(rl) / 2.0L);
  const long double log_cosh = std::log(std::cosh(rl));

  // amplitude = sqrt(l! n!) cosh^{-(n+1/2)} (tanh/2)^k sum_g (-1)^g (sinh/2)^{2g} / (g! (n-2g)! (k+g)!),
  // k = (l - n)/2. For k < 0 the first |k| terms vanish and (tanh/2)^k (sinh/2)^{2|k|} = (sinh cosh / 2)^{|k|}.
  const int k = (l - n) / 2;
  long double log_pref = 0.5L * (lfact(l) + lfact(n)) - (n + 0.5L) * log_cosh;
  std::vector<LogTerm> terms;
  if (k >= 0) {
    log_pref += k * (std::log(std::tanh(rl)) - std::log(2.0L));
    for (int g = 0; 2 * g <= n; ++g) {
      terms.push_back({2 * g * log_half_sinh - lfact(g) - lfact(n - 2 * g) - lfact(k + g), g % 2 == 0 ? 1 : -1});
    }
  } else {
    const int m = -k;
    log_pref += m * (log_half_sinh + log_cosh);
    for (int h = 0; 2 * (m + h) <= n; ++h) {
      const int g = m + h;
      terms.push_back({2 * h * log_half_sinh - lfact(g) - lfact(n - 2 * g) - lfact(h), g % 2 == 0 ? 1 : -1});
    }
  }
  const long double log_amp = log_pref + log_abs_sum(terms);
  return static_cast<double>(std::exp(2.0L * log_amp));
}

double displacement_matrix_element_sq(int n, int l, Complex alpha) {
  check_levels(n, l, "displacement_matrix_element_sq");
  const double mag = std::abs(alpha);
  if (!std::isfinite(mag) || mag > 6.0) throw DomainError("displacement_matrix_element_sq: |alpha| must be <= 6");
  if (mag == 0.0) return n == l ? 1.0 : 0.0;

  const long double x = static_cast<long double>(mag) * mag;
  const long double log_x = std::log(x);
  const int lo = std::min(n, l);
  std::vector<LogTerm> terms;
  terms.reserve(static_cast<std::size_t>(lo) + 1);
  for (int g = 0; g <= lo; ++g) {
    const long double log_binom_l = lfact(l) - lfact(g) - lfact(l - g);
    const long double log_binom_n = lfact(n) - lfact(g) - lfact(n - g);
    terms.push_back({log_binom_l + log_binom_n + lfact(g) + (lo - g) * log_x, (lo - g) % 2 == 0 ? 1 : -1});
  }
  const long double log_val =
      -x - lfact(l) - lfact(n) + std::abs(l - n) * log_x + 2.0L * log_abs_sum(terms);
  return static_cast<double>(std::exp(log_val));
}

}  // namespace fjsq
