#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tinv/errors.hpp"
#include "tinv/model.hpp"

namespace tinv {

// Bucket of daily bet counts: exact integers up to 100, then geometric
// buckets with ratio 1.25, i.e. (100*1.25^k, 100*1.25^(k+1)].
struct NBucket {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // inclusive
  double center = 0.0;
};
NBucket n_bucket(std::size_t n) noexcept;

inline constexpr std::size_t kDefaultMinBucketCount = 10;

struct ConditionalMean {
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double center = 0.0;
  double mean = 0.0;
  std::size_t count = 0;  // observations (not weight) in the bucket
};

// E[value | N bucket]. With weights, the bucket mean is weighted. Buckets
// with fewer than min_count observations are omitted.
std::vector<ConditionalMean> conditional_mean_by_N(std::span<const std::size_t> n,
                                                   std::span<const double> values,
                                                   std::span<const double> weights = {},
                                                   std::size_t min_count = kDefaultMinBucketCount);

enum class RecordField { Risk, KoInvariant, Cost, CostInvariant, SigmaD, MeanBetRisk, MeanBetDollars };
double field_value(const AggregateRecord& record, RecordField field) noexcept;

std::vector<ConditionalMean> conditional_mean_by_N(std::span<const AggregateRecord> records,
                                                   RecordField field,
                                                   std::size_t min_count = kDefaultMinBucketCount);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

// Ordinary least squares y = intercept + slope x. Throws InsufficientPoints
// for fewer than three points.
RegressionResult ols_line(std::span<const double> x, std::span<const double> y);

// Unweighted OLS of log10(mean) on log10(bucket center), one point per bucket.
// Buckets with non-positive mean are skipped.
RegressionResult loglog_ols(std::span<const ConditionalMean> table);

struct CalibrationResult {
  double y_spd = 0.0;
  double y_imp = 0.0;
  double intercept = 0.0;  // zero unless fitted with an intercept
  double r_squared = 0.0;
  std::size_t n_points = 0;
  bool has_negative = false;  // OLS is unconstrained; negative values are flagged
};

// OLS of I on (c0_spd, c0_imp). Without intercept, r^2 is measured against
// the zero model. Throws InsufficientPoints (< 10 usable records) or
// SingularDesign (collinear regressors).
CalibrationResult calibrate_Y(std::span<const AggregateRecord> records, bool with_intercept = false);

struct DispersionStats {
  double mean = 0.0;
  double std_dev = 0.0;  // population
  double mad = 0.0;      // mean absolute deviation
  double cv = 0.0;
  double cv_mad = 0.0;
};

// Throws InsufficientPoints (n < 2) or NonPositiveMean.
DispersionStats dispersion(std::span<const double> values);

struct StockExponents {
  std::string symbol;
  double gamma = 0.0;  // mean bet risk ~ N^gamma
  double nu = 0.0;     // sigma_d ~ N^nu
  double delta = 0.0;  // mean dollar bet size ~ N^delta
  std::size_t n_buckets = 0;
};

struct ExponentTable {
  std::vector<StockExponents> rows;  // sorted by symbol
  std::vector<Diagnostic> skipped;   // InsufficientPoints per stock
};

ExponentTable per_stock_exponents(std::span<const AggregateRecord> records,
                                  std::size_t min_count = kDefaultMinBucketCount);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double density = 0.0;  // sum of density * (hi - lo) is one
};

// Decade-aligned log bins spanning the data; empty interior bins included.
// Non-positive values are ignored.
std::vector<HistogramBin> log_histogram(std::span<const double> values, int bins_per_decade = 10);

double pearson(std::span<const double> x, std::span<const double> y);
double median(std::vector<double> values);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace tinv
