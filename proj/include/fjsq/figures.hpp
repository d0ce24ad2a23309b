#pragma once

// Tabulated theory curves: each figure is a sweep over one parameter whose rows
// are evaluated through a protocol run followed by sideband thermometry.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fjsq/analytic.hpp"
#include "fjsq/fock.hpp"
#include "fjsq/spectroscopy.hpp"

namespace fjsq {

enum class FigureId { Fig2a, Fig2aInset, Fig2b, Fig2c, Fig2d, Fig3b, Fig3c, Fig4a, Fig4c };

inline constexpr std::array<FigureId, 9> kAllFigures = {FigureId::Fig2a, FigureId::Fig2aInset, FigureId::Fig2b,
                                                        FigureId::Fig2c, FigureId::Fig2d,      FigureId::Fig3b,
                                                        FigureId::Fig3c, FigureId::Fig4a,      FigureId::Fig4c};

std::string_view figure_name(FigureId id);
/// Throws DomainError for an unknown name.
FigureId parse_figure(std::string_view name);

/// Per-figure physical constants. Times in seconds, lengths in metres.
struct FigureConstants {
  double nbar0 = 0.22;
  double envelope_tau = 0.0;   ///< 1/e decay of the oscillation contrast; 0 disables
  double Gamma = 32e-6;        ///< decoherence time of the amplified coherent part
  double alpha_i = 0.67;
  double two_r = 1.23;         ///< double-jump amplitude (fig4a)
  double per_jump_r = 0.39;    ///< fig2a_inset
  double shift_d = 29.6e-9;    ///< fig3c
  double squeeze_factor = 2.58;  ///< fig2d, e^{2r}
  double anchor_d = 133e-9;    ///< calibration anchor: anchor_d maps onto anchor_alpha
  double anchor_alpha = 3.0;
  double bound_states = 11.0;  ///< ceiling used by the fig2a diagnostic column
};

struct FigureSpec {
  FigureId id = FigureId::Fig2a;
  /// Sweep values in the units of the first CSV column (dimensionless, us, nm or cm/s).
  std::vector<double> sweep;
  TrapParams trap;
  RabiParams rabi;
  FigureConstants constants;
  int fock_dim = kDefaultFockDim;

  /// Grid nonempty and strictly increasing, constants positive. Throws DomainError.
  void validate() const;
};

/// start, start + step, ... up to stop (inclusive within half a step).
std::vector<double> linear_grid(double start, double stop, double step);

/// Default grid and constants for `id` on top of the given physics.
FigureSpec default_figure_spec(FigureId id, const TrapParams& trap = TrapParams::experiment_defaults(),
                               const RabiParams& rabi = RabiParams::experiment_defaults());

struct CurveTable {
  FigureId id = FigureId::Fig2a;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws DomainError when no column has this name.
  const std::vector<double>& column(std::string_view name) const;
  bool operator==(const CurveTable&) const = default;
};

/// Evaluates every row of the sweep. Row failures are rethrown with the row named.
CurveTable generate(const FigureSpec& spec);

/// '#'-prefixed metadata block, header row, values with 9 significant digits.
std::string format_csv(const CurveTable& table);
/// Writes format_csv(table) to `path` through a temporary file and a rename.
void emit_csv(const CurveTable& table, const std::filesystem::path& path);
/// gnuplot script plotting every column against the first one.
std::string plot_script(const CurveTable& table, const std::string& csv_name);

/// Mean spacing of the interior local maxima of y(t), refined by parabolic
/// interpolation. NaN when fewer than two maxima exist. t must be uniform.
double estimate_period(std::span<const double> t, std::span<const double> y);

/// Lag (in units of dt) of the first autocorrelation maximum that follows the first
/// negative excursion of the mean-removed series. NaN when there is none.
double autocorrelation_peak_lag(std::span<const double> y, double dt);

}  // namespace fjsq
