#include "fjsq/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "fjsq/errors.hpp"
#include "fjsq/oracle/lattice_bands.hpp"
#include "fjsq/protocol.hpp"

namespace fjsq {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Runs body, turning library errors into a failed check that names the cause.
CheckResult guarded(const std::string& name, double tolerance, const std::function<void(CheckResult&)>& body) {
  CheckResult c{name, 0.0, tolerance, false, ""};
  try {
    body(c);
    c.passed = c.worst <= tolerance;
  } catch (const TruncationError& e) {
    c.passed = false;
    c.worst = INFINITY;
    c.detail = std::string("tail-mass guard: ") + e.what();
  } catch (const Error& e) {
    c.passed = false;
    c.worst = INFINITY;
    c.detail = e.what();
  }
  return c;
}

void record(CheckResult& c, double deviation, const std::string& where) {
  if (deviation >= c.worst) {
    c.worst = deviation;
    c.detail = where;
  }
}

CheckResult matrix_elements(const Config& cfg) {
  const SelfcheckGrid& g = cfg.selfcheck;
  return guarded("matrix_elements", 1e-8, [&](CheckResult& c) {
    for (double r0 : g.r_values) {
      for (double r : {r0, -r0}) {
        const ComplexMatrix s = squeeze_operator_exact(r, 0.0, g.oracle_dim);
        for (int n = 0; n <= g.n_max; ++n)
          for (int l = 0; l <= g.n_max; ++l)
            record(c, std::abs(squeeze_matrix_element_sq(n, l, r) - std::norm(s(n, l))),
                   "S(r=" + num(r) + ") n=" + std::to_string(n) + " l=" + std::to_string(l));
      }
    }
    for (double a : g.alpha_values) {
      const Complex alpha = std::polar(a, 0.7);
      const ComplexMatrix d = displacement_operator_exact(alpha, g.oracle_dim);
      for (int n = 0; n <= g.n_max; ++n)
        for (int l = 0; l <= g.n_max; ++l)
          record(c, std::abs(displacement_matrix_element_sq(n, l, alpha) - std::norm(d(n, l))),
                 "D(|alpha|=" + num(a) + ") n=" + std::to_string(n) + " l=" + std::to_string(l));
    }
  });
}

CheckResult moments(const Config& cfg) {
  const SelfcheckGrid& g = cfg.selfcheck;
  return guarded("moments", 1e-4, [&](CheckResult& c) {
    const int dim = g.moments_dim;
    for (double s : g.r_values) {
      const ComplexMatrix op = squeeze_operator_exact(s, 0.0, dim);
      for (double nbar0 : g.nbar0_values) {
        // Diagonal of S rho_th S^dagger from the columns of S.
        const double x = nbar0 / (1.0 + nbar0);
        std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
        double w = 1.0 / (1.0 + nbar0);
        for (int l = 0; l < dim && w > 1e-18; ++l, w *= x)
          for (int n = 0; n < dim; ++n) p[static_cast<std::size_t>(n)] += w * std::norm(op(n, l));
        const NumberDistribution dist(std::move(p));
        const SqueezedThermalMoments m = squeezed_thermal_moments(nbar0, s);
        const double dn = std::sqrt(dist.variance());
        const std::string where = "s=" + num(s) + " nbar0=" + num(nbar0);
        record(c, m.nbar_st > 0 ? std::abs(dist.mean() - m.nbar_st) / m.nbar_st : std::abs(dist.mean()),
               where + " mean");
        record(c, m.dnbar_st > 0 ? std::abs(dn - m.dnbar_st) / m.dnbar_st : dn, where + " std");
      }
    }
  });
}

// Builtins, plus single jumps of each grid amplitude when `with_jumps` is set.
std::vector<std::pair<std::string, Protocol>> agreement_protocols(const Config& cfg, bool with_jumps) {
  std::vector<std::pair<std::string, Protocol>> out;
  for (Builtin b : {Builtin::SMinus2r, Builtin::SPlus2r, Builtin::DisplacedSqueeze, Builtin::Amplify})
    out.emplace_back(std::string(builtin_name(b)), builtin_protocol(b, cfg.trap));
  BuiltinOptions three;
  three.n_jumps = 3;
  TrapParams shallow = cfg.trap;
  shallow.omega2 = cfg.trap.omega1 * std::exp(-2.0 * 0.39);
  out.emplace_back("multi_jump(3)", builtin_protocol(Builtin::MultiJump, shallow, three));
  for (double r : cfg.selfcheck.r_values) {
    if (!with_jumps || r == 0.0) continue;
    Protocol p;
    p.omega_initial = Frequency::angular(cfg.trap.omega1);
    p.mass = cfg.trap.mass;
    p.steps = {FrequencyJump{Frequency::angular(cfg.trap.omega1 * std::exp(-2.0 * r))}};
    out.emplace_back("jump(r=" + num(r) + ")", p);
  }
  return out;
}

CheckResult backend_agreement(const Config& cfg) {
  return guarded("backend_agreement", 1e-6, [&](CheckResult& c) {
    const int dim = cfg.fock_dim;
    for (double nbar0 : {0.0, 0.22}) {
      const ComplexMatrix rho = thermal_density_matrix(nbar0, dim).rho;
      // Thermal inputs at the largest grid amplitudes exceed any reasonable D.
      for (const auto& [name, protocol] : agreement_protocols(cfg, nbar0 == 0.0)) {
        const ProtocolResult fock = run_fock(protocol, rho);
        const NumberDistribution implied = implied_distribution(fock, nbar0, dim - 1, dim);
        record(c, total_variation(number_distribution(fock.final_rho), implied),
               name + " nbar0=" + num(nbar0) + " D=" + std::to_string(dim));
      }
    }
  });
}

CheckResult parity(const Config& cfg) {
  const SelfcheckGrid& g = cfg.selfcheck;
  return guarded("parity", 1e-12, [&](CheckResult& c) {
    for (double r : g.r_values) {
      const ComplexMatrix s = squeeze_operator_exact(r, 0.0, g.oracle_dim);
      double odd = 0.0;
      for (int n = 1; n < g.oracle_dim; n += 2) odd += std::norm(s(n, 0));
      record(c, odd, "S(r=" + num(r) + ")|0> odd population");
    }
  });
}

CheckResult closure(const Config& cfg) {
  return guarded("closure", 1e-10, [&](CheckResult& c) {
    for (const auto& [name, protocol] : agreement_protocols(cfg, true))
      record(c, run_symplectic(protocol).pair.invariant_defect(), name);
    for (int n = 1; n <= 8; ++n) {
      BuiltinOptions o;
      o.n_jumps = n;
      record(c, run_symplectic(builtin_protocol(Builtin::MultiJump, cfg.trap, o)).pair.invariant_defect(),
             "multi_jump(" + std::to_string(n) + ")");
    }
  });
}

CheckResult lattice_levels(const Config& cfg) {
  return guarded("lattice_levels", 0.5, [&](CheckResult& c) {
    const double q = cfg.trap.q();
    const std::vector<double> exact = oracle::lattice_levels(q);
    for (int n = 0; n <= 6; ++n)
      record(c, std::abs(mathieu_energy(n, q) - exact[static_cast<std::size_t>(n)]),
             "n=" + std::to_string(n) + " (E_R units)");
    const int three_term = bound_state_count(cfg.trap);
    const int reference = oracle::lattice_bound_count(q);
    if (std::abs(three_term - reference) > 1) {
      c.worst = INFINITY;
      c.detail = "bound-state count " + std::to_string(three_term) + " vs oracle " + std::to_string(reference);
    } else {
      c.detail += "; bound states " + std::to_string(three_term) + " (oracle " + std::to_string(reference) + ")";
    }
  });
}

CheckResult unitarity(const Config& cfg) {
  return guarded("unitarity", 1e-9, [&](CheckResult& c) {
    for (double r : cfg.selfcheck.r_values)
      record(c, unitarity_defect(squeeze_operator_exact(r, 0.0, cfg.fock_dim)),
             "S(r=" + num(r) + ") D=" + std::to_string(cfg.fock_dim));
    for (double a : cfg.selfcheck.alpha_values)
      record(c, unitarity_defect(displacement_operator_exact(a, cfg.fock_dim)),
             "D(alpha=" + num(a) + ") D=" + std::to_string(cfg.fock_dim));
  });
}

}  // namespace

bool SelfcheckReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string SelfcheckReport::format() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " worst=" << num(c.worst) << " tol=" << num(c.tolerance);
    if (!c.detail.empty()) out << " at " << c.detail;
    out << '\n';
  }
  out << (passed() ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n");
  return out.str();
}

SelfcheckReport run_selfcheck(const Config& config) {
  SelfcheckReport report;
  report.checks.push_back(matrix_elements(config));
  report.checks.push_back(moments(config));
  report.checks.push_back(backend_agreement(config));
  report.checks.push_back(parity(config));
  report.checks.push_back(closure(config));
  report.checks.push_back(lattice_levels(config));
  report.checks.push_back(unitarity(config));
  return report;
}

}  // namespace fjsq
