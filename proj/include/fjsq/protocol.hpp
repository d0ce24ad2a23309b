#pragma once

// Jump / wait / shift sequences, executed either on the exact Fock backend or
// on the symplectic backend that tracks only (u, v, alpha).
//
// Both backends express the state in the Fock basis of the trap the atoms sit
// in: a frequency jump omega_a -> omega_b acts on the coefficients as the squeeze
// S(ln(omega_a / omega_b) / 2), a wait as a rotation at the current frequency,
// and a shift of the potential minimum as D(d / 2 x0).

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fjsq/analytic.hpp"
#include "fjsq/constants.hpp"
#include "fjsq/fock.hpp"

namespace fjsq {

/// Trap frequency stored in Hz so that protocol documents round-trip exactly.
class Frequency {
 public:
  constexpr Frequency() = default;
  static constexpr Frequency hz(double value) { return Frequency(value); }
  static constexpr Frequency angular(double omega) { return Frequency(omega / constants::kTwoPi); }

  constexpr double in_hz() const { return hz_; }
  constexpr double angular() const { return constants::kTwoPi * hz_; }

  friend constexpr bool operator==(Frequency, Frequency) = default;

 private:
  constexpr explicit Frequency(double value) : hz_(value) {}
  double hz_ = 0.0;
};

struct FrequencyJump {
  Frequency target;
  friend bool operator==(const FrequencyJump&, const FrequencyJump&) = default;
};

struct Wait {
  double tau = 0.0;  ///< s
  friend bool operator==(const Wait&, const Wait&) = default;
};

struct ShiftOrigin {
  double d = 0.0;  ///< m
  friend bool operator==(const ShiftOrigin&, const ShiftOrigin&) = default;
};

/// Returns the potential minimum to where it was before the matching ShiftOrigin.
struct UnshiftOrigin {
  friend bool operator==(const UnshiftOrigin&, const UnshiftOrigin&) = default;
};

using ProtocolStep = std::variant<FrequencyJump, Wait, ShiftOrigin, UnshiftOrigin>;

std::string describe(const ProtocolStep& step);

struct Protocol {
  Frequency omega_initial;
  double mass = constants::kRb85Mass;
  double calibration = 1.0;
  std::vector<ProtocolStep> steps;

  /// Throws DomainError for bad parameters and ContractError for an unmatched UnshiftOrigin.
  void validate() const;
  double total_wait() const;

  friend bool operator==(const Protocol&, const Protocol&) = default;
};

struct ProtocolResult {
  ComplexMatrix final_rho;  ///< empty for symplectic runs
  BogoliubovPair pair;
  Complex displacement{0.0, 0.0};  ///< coherent amplitude relative to the final trap minimum
  double elapsed = 0.0;            ///< s
  Frequency final_omega;           ///< trap whose Fock basis the result is expressed in
};

/// Exact Fock-space run starting from `initial` (its dimension sets D). Every step is
/// followed by the tail-mass guard; violations raise TruncationError naming the step.
ProtocolResult run_fock(const Protocol& protocol, const ComplexMatrix& initial);

/// Symplectic run: composes the Bogoliubov pair and the displacement accumulator.
ProtocolResult run_symplectic(const Protocol& protocol);

/// alpha_i exp(2r) exp(i pi); r is the single-jump amplitude.
Complex amplified_alpha(Complex alpha_i, double r);

enum class Builtin { SMinus2r, SPlus2r, MultiJump, DisplacedSqueeze, Amplify };

struct BuiltinOptions {
  int n_jumps = 2;      ///< multi_jump only
  double alpha_i = 0.67;  ///< displaced_squeeze and amplify
};

/// Parses "S_minus_2r", "S_plus_2r", "multi_jump", "displaced_squeeze" or "amplify".
Builtin parse_builtin(std::string_view name);
std::string_view builtin_name(Builtin b);

/// Canned sequences between params.omega1 and params.omega2 with quarter-period waits.
Protocol builtin_protocol(Builtin which, const TrapParams& params, const BuiltinOptions& options = {});

/// Reversed sequence with inverted jumps and shifts; waits are completed to whole periods.
Protocol inverse_protocol(const Protocol& protocol);

/// Fock distribution (n = 0..n_max) of the Gaussian state described by a symplectic
/// result acting on a thermal state of mean nbar0. Pure squeezes and pure displacements
/// with n_max <= 60 use the closed-form matrix elements; otherwise the columns of
/// D(alpha) S(xi) are built at dimension `fock_dim` from the spectral decompositions of
/// the generators. Throws TruncationError when the guard band holds more than 1e-6.
NumberDistribution implied_distribution(const ProtocolResult& summary, double nbar0, int n_max,
                                        int fock_dim = kDefaultFockDim);

inline constexpr int kProtocolSchemaVersion = 1;

nlohmann::json protocol_to_json(const Protocol& protocol);
/// Accepts explicit step lists or {"builtin": name, ...} documents resolved against `params`.
/// Throws ConfigError on malformed input.
Protocol protocol_from_json(const nlohmann::json& doc, const TrapParams& params);

}  // namespace fjsq
