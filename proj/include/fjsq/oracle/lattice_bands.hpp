#pragma once

// Plane-wave diagonalisation of the cos^2 lattice, used to check the
// three-term asymptotic energies. Not part of the core library surface.

#include <vector>

namespace fjsq::oracle {

/// Energies E_n / E_R (measured from the potential minimum) at zero quasimomentum
/// for H = -d^2/dchi^2 + 4 q cos^2(chi), lowest first. `harmonics` plane waves on
/// each side of zero are kept.
std::vector<double> lattice_levels(double q, int harmonics = 60);

/// Number of zero-quasimomentum levels at or below the barrier height 4q.
int lattice_bound_count(double q, int harmonics = 60);

}  // namespace fjsq::oracle
