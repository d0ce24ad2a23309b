#pragma once

#include <numbers>

namespace fjsq::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kPlanck = 6.62607015e-34;          // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

inline constexpr double kRb85Mass = 84.911789738 * kAtomicMassUnit;  // kg

/// Angular frequency (rad/s) from an ordinary frequency in Hz.
constexpr double angular(double hz) { return kTwoPi * hz; }

/// Energy (J) of a quantum hbar * 2pi * hz.
constexpr double energy_from_hz(double hz) { return kHbar * kTwoPi * hz; }
constexpr double hz_from_energy(double energy) { return energy / (kHbar * kTwoPi); }

}  // namespace fjsq::constants
