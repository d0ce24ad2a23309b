#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fjsq/errors.hpp"
#include "fjsq/figures.hpp"

using namespace fjsq;

namespace {

const CurveTable& table(FigureId id) {
  static std::map<FigureId, CurveTable> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, generate(default_figure_spec(id))).first;
  return it->second;
}

std::string metadata(const CurveTable& t, const std::string& key) {
  for (const auto& [k, v] : t.metadata)
    if (k == key) return v;
  return {};
}

}  // namespace

TEST(Names, RoundTrip) {
  for (FigureId id : kAllFigures) EXPECT_EQ(parse_figure(figure_name(id)), id);
  EXPECT_THROW(parse_figure("fig9z"), DomainError);
}

TEST(Grid, InclusiveAndValidated) {
  EXPECT_EQ(linear_grid(0.0, 2.8, 0.05).size(), 57u);
  EXPECT_EQ(default_figure_spec(FigureId::Fig2a).sweep.size(), 57u);
  EXPECT_EQ(default_figure_spec(FigureId::Fig2aInset).sweep, (std::vector<double>{1, 2, 3, 4}));
  FigureSpec spec = default_figure_spec(FigureId::Fig2b);
  spec.sweep.clear();
  EXPECT_THROW(spec.validate(), DomainError);
  EXPECT_THROW(generate(spec), DomainError);
  spec.sweep = {0.1, 0.1};
  EXPECT_THROW(spec.validate(), DomainError);
}

TEST(Determinism, IdenticalSpecsGiveIdenticalTables) {
  const FigureSpec spec = default_figure_spec(FigureId::Fig3b);
  const CurveTable a = generate(spec);
  const CurveTable b = generate(spec);
  EXPECT_EQ(a, b);
  EXPECT_EQ(format_csv(a), format_csv(b));
}

TEST(Csv, FormatAndEmit) {
  const CurveTable& t = table(FigureId::Fig4c);
  const std::string csv = format_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::size_t comments = 0;
  while (std::getline(in, line) && line.starts_with("#")) ++comments;
  EXPECT_EQ(comments, t.metadata.size());
  EXPECT_EQ(line, "two_r,alpha_f_abs,coherent_weight,residual_r,R_with_decoherence,R_no_decoherence");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, t.rows());

  const auto dir = std::filesystem::temp_directory_path() / "fjsq_test_csv";
  std::filesystem::create_directories(dir);
  emit_csv(t, dir / "fig4c.csv");
  std::ifstream file(dir / "fig4c.csv");
  std::stringstream contents;
  contents << file.rdbuf();
  EXPECT_EQ(contents.str(), csv);
  std::filesystem::remove_all(dir);
  EXPECT_NE(plot_script(t, "fig4c.csv").find("fig4c.csv"), std::string::npos);
}

TEST(Csv, NineSignificantDigits) {
  CurveTable t;
  t.id = FigureId::Fig2b;
  t.names = {"x"};
  t.columns = {{1.0 / 3.0}};
  EXPECT_NE(format_csv(t).find("\n0.333333333\n"), std::string::npos) << format_csv(t);
}

TEST(Fig2a, StartsAtThermalBaselineAndRisesWithinBound) {
  const CurveTable& t = table(FigureId::Fig2a);
  EXPECT_EQ(t.rows(), 57u);
  EXPECT_NEAR(t.column("R")[0], 0.18, 0.005);
  const auto& r = t.column("R");
  const auto& within = t.column("within_bound");
  EXPECT_EQ(within[0], 1.0);
  for (std::size_t i = 1; i < t.rows() && within[i] == 1.0; ++i) EXPECT_GE(r[i], r[i - 1] - 1e-12) << i;
  for (std::size_t i = 0; i < t.rows(); ++i) EXPECT_NEAR(t.column("r_eff")[i], t.column("two_r")[i], 1e-9);
}

TEST(Fig2aInset, AmplitudeAddsPerJump) {
  const CurveTable& t = table(FigureId::Fig2aInset);
  for (std::size_t i = 0; i < t.rows(); ++i) EXPECT_NEAR(t.column("total_r")[i], 0.39 * (i + 1.0), 1e-9);
  for (std::size_t i = 1; i < t.rows(); ++i) EXPECT_GT(t.column("R")[i], t.column("R")[i - 1]);
}

TEST(Fig2b, FlatAtThermalBaseline) {
  const CurveTable& t = table(FigureId::Fig2b);
  const double base = t.column("R_baseline")[0];
  for (double x : t.column("R")) EXPECT_NEAR(x, base, 1e-8);
  for (double x : t.column("r_eff")) EXPECT_LT(x, 1e-9);
}

TEST(Fig2c, OscillatesAtHalfLowPeriod) {
  const CurveTable& t = table(FigureId::Fig2c);
  const double period = estimate_period(t.column("tau_us"), t.column("R"));
  EXPECT_NEAR(period, M_PI / (2 * M_PI * 23e3) * 1e6, 0.3);
  EXPECT_NEAR(period, 21.8, 0.3);
}

TEST(Fig2d, WidthRatios) {
  const CurveTable& t = table(FigureId::Fig2d);
  EXPECT_NEAR(std::stod(metadata(t, "width_ground_cm_s")), 2.95, 0.0295);
  EXPECT_NEAR(std::stod(metadata(t, "ratio_ground_over_momentum_squeezed")), 2.58, 1e-6);
  EXPECT_NEAR(std::stod(metadata(t, "ratio_position_squeezed_over_ground")), 2.58, 1e-6);
  EXPECT_EQ(metadata(t, "measured_ratio_momentum_squeezed"), "2.43(8)");
  EXPECT_EQ(metadata(t, "measured_ratio_position_squeezed"), "2.18(8)");
}

TEST(Fig3b, ConvergesToCoherentCurve) {
  const CurveTable& t = table(FigureId::Fig3b);
  EXPECT_GE(t.column("R_displaced_thermal")[0], t.column("R_coherent")[0]);
  bool checked = false;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.column("alpha")[i] < 2.5) continue;
    const double a = t.column("R_displaced_thermal")[i];
    const double b = t.column("R_coherent")[i];
    EXPECT_LT(std::abs(a - b) / b, 0.05) << t.column("d_nm")[i];
    checked = true;
  }
  EXPECT_TRUE(checked);
  EXPECT_NEAR(std::stod(metadata(t, "pinned_calibration")), 0.877, 1e-3);
  EXPECT_NEAR(std::stod(metadata(t, "alpha_at_anchor_first_principles")), 2.63, 0.0263);
}

TEST(Fig3c, OscillatesAtHighFrequency) {
  const CurveTable& t = table(FigureId::Fig3c);
  EXPECT_NEAR(estimate_period(t.column("tau_us"), t.column("R")), 2 * M_PI / (2 * M_PI * 93e3) * 1e6, 0.3);
}

TEST(Fig4a, AutocorrelationPeaksAtOnePeriod) {
  const CurveTable& t = table(FigureId::Fig4a);
  const auto& tau = t.column("tau_us");
  const double period = autocorrelation_peak_lag(t.column("R"), tau[1] - tau[0]);
  EXPECT_NEAR(period, 10.75, 0.3);
  // Twice the frequency would put the peak near half a period.
  EXPECT_GT(period, 0.75 * 10.75);
}

TEST(Fig4c, DecoherenceLowersContrast) {
  const CurveTable& t = table(FigureId::Fig4c);
  const auto& two_r = t.column("two_r");
  const double w1 = 2 * M_PI * 93e3;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    EXPECT_NEAR(t.column("alpha_f_abs")[i], 0.67 * std::exp(two_r[i]), 1e-9);
    const double t_prime = M_PI / w1 + M_PI / (w1 * std::exp(-two_r[i]));
    EXPECT_NEAR(t.column("coherent_weight")[i], std::exp(-t_prime / 32e-6), 1e-12);
    EXPECT_LE(t.column("R_with_decoherence")[i], 1.0);
  }
  EXPECT_THROW(t.column("nonexistent"), DomainError);
}

TEST(Periods, EstimatorsOnSyntheticSignals) {
  std::vector<double> t, y;
  for (int k = 0; k <= 600; ++k) {
    t.push_back(0.1 * k);
    y.push_back(std::cos(2 * M_PI * t.back() / 7.3) * std::exp(-t.back() / 40.0));
  }
  EXPECT_NEAR(estimate_period(t, y), 7.3, 0.05);
  EXPECT_NEAR(autocorrelation_peak_lag(y, 0.1), 7.3, 0.2);
  const std::vector<double> flat(10, 1.0);
  EXPECT_TRUE(std::isnan(estimate_period(std::span(t).first(10), flat)));
}
