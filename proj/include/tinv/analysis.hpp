#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tinv/costs.hpp"
#include "tinv/estimators.hpp"
#include "tinv/model.hpp"
#include "tinv/stats.hpp"

namespace tinv {

enum class GroupBy { None, Stock, Sector, Cap, Year };
std::string_view to_string(GroupBy group_by) noexcept;
std::optional<GroupBy> parse_group_by(std::string_view text) noexcept;

inline constexpr CostCoefficients kDefaultCoefficients{3.5, 1.5};

struct AnalysisOptions {
  VolEstimatorKind vol = VolEstimatorKind::HighLow;
  PriceProxy price = PriceProxy::VwapWeighted;
  // Explicit Y values; ignored when calibrate is set. Neither -> defaults.
  std::optional<CostCoefficients> coefficients;
  bool calibrate = false;
  bool calibrate_intercept = false;
  GroupBy group_by = GroupBy::None;
  std::size_t min_bucket_count = kDefaultMinBucketCount;
  int histogram_bins_per_decade = 10;
  ParticipationBuckets participation;
};

struct AnalysisInput {
  std::span<const Metaorder> metaorders;
  std::span<const DailyBar> bars;
  std::span<const StockMeta> meta;  // empty when no metadata is available
};

// One row of the N-conditioned table: mean R and mean I over a bucket.
struct ConditionalRow {
  std::string grouping;  // "all", "stock", "sector", "cap" or "year"
  std::string group;
  ConditionalMean risk;
  double mean_ko = 0.0;
};

struct GroupFit {
  std::string group;
  RegressionResult fit;
};

struct InvariantStatRow {
  std::string name;
  std::size_t n = 0;
  DispersionStats stats;
};

struct NamedHistogram {
  std::string name;
  std::vector<HistogramBin> bins;
};

struct AnalysisResult {
  AnalysisOptions options;

  std::size_t n_metaorders = 0;
  std::size_t n_bars = 0;
  std::size_t n_panels = 0;
  std::size_t n_zero_volatility = 0;
  std::size_t n_degenerate_cost = 0;

  std::vector<AggregateRecord> records;  // sorted by (symbol, date)
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> notices;

  CostCoefficients coefficients;
  std::string coefficient_source;  // "calibrated", "explicit" or "default"
  std::optional<CalibrationResult> calibration;

  std::vector<ConditionalRow> conditional_means;
  std::optional<RegressionResult> pooled_fit;    // <R>_N vs N
  std::optional<RegressionResult> bet_risk_fit;  // E[R_i | N] vs N
  std::vector<GroupFit> fit_by_cap;
  std::vector<GroupFit> fit_by_sector;
  std::vector<GroupFit> fit_by_year;
  std::vector<GroupFit> fit_by_stock;

  std::vector<InvariantStatRow> invariant_stats;
  ExponentTable exponents;
  std::vector<NamedHistogram> histograms;
  std::vector<CostRatioBucket> cost_ratios;

  double mean_spread_share = 0.0;      // <C_spd / C>
  double median_spread_c = 0.0;        // median over stocks of per-stock medians
  double vol_size_correlation = 0.0;   // mean per-stock corr(sigma_d, v_i p_i)

  bool sufficient() const noexcept { return !records.empty() && pooled_fit.has_value(); }
};

// Volatility of every panel under the chosen estimator. `bars` is the full bar
// set, needed by the monthly estimator.
std::vector<VolEstimate> panel_volatilities(std::span<const StockDayPanel> panels,
                                            std::span<const DailyBar> bars, VolEstimatorKind kind);

// Full pipeline: join, volatility, aggregation, coefficients, statistics.
// Fatal data errors (DuplicateBar) throw; insufficient data is reported
// through sufficient().
AnalysisResult run_analysis(const AnalysisInput& input, const AnalysisOptions& options);

}  // namespace tinv
