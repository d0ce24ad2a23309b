#pragma once

// Closed-form formulas against brute-force references over a configurable grid.

#include <string>
#include <vector>

#include "fjsq/config.hpp"

namespace fjsq {

struct CheckResult {
  std::string name;
  double worst = 0.0;      ///< largest deviation observed
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;      ///< where the worst case occurred, or the error that stopped the check
};

struct SelfcheckReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  /// One line per check; contains no timings, so reruns are byte-identical.
  std::string format() const;
};

/// matrix_elements, moments, backend_agreement, parity, closure, lattice_levels, unitarity.
SelfcheckReport run_selfcheck(const Config& config);

}  // namespace fjsq
