#include "tinv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <optional>

#include "tinv/summation.hpp"

namespace tinv {
namespace {

constexpr double kGeometricStart = 100.0;
constexpr double kGeometricRatio = 1.25;

// Mean computed around the first element, so constant input is reproduced
// exactly.
double shifted_mean(std::span<const double> xs) noexcept {
  const double shift = xs.front();
  CompensatedSum acc;
  for (double x : xs) acc.add(x - shift);
  return shift + acc.value() / static_cast<double>(xs.size());
}

double log10_edge_index(double x, int per_decade) noexcept {
  return std::floor(std::log10(x) * per_decade);
}

}  // namespace

NBucket n_bucket(std::size_t n) noexcept {
  if (n <= static_cast<std::size_t>(kGeometricStart)) {
    const auto c = static_cast<double>(n);
    return {n, n, c};
  }
  double lo = kGeometricStart;
  double hi = lo * kGeometricRatio;
  while (static_cast<double>(n) > hi) {
    lo = hi;
    hi *= kGeometricRatio;
  }
  return {static_cast<std::size_t>(std::floor(lo)) + 1, static_cast<std::size_t>(std::floor(hi)),
          std::sqrt(lo * hi)};
}

std::vector<ConditionalMean> conditional_mean_by_N(std::span<const std::size_t> n,
                                                   std::span<const double> values,
                                                   std::span<const double> weights,
                                                   std::size_t min_count) {
  struct Acc {
    NBucket bucket;
    CompensatedSum weighted;
    CompensatedSum weight;
    std::size_t count = 0;
  };
  std::map<std::size_t, Acc> buckets;  // keyed by lower bound
  for (std::size_t i = 0; i < n.size(); ++i) {
    const NBucket b = n_bucket(n[i]);
    Acc& acc = buckets[b.lo];
    acc.bucket = b;
    const double w = weights.empty() ? 1.0 : weights[i];
    acc.weighted.add(w * values[i]);
    acc.weight.add(w);
    ++acc.count;
  }
  std::vector<ConditionalMean> out;
  for (const auto& [lo, acc] : buckets) {
    if (acc.count < min_count) continue;
    out.push_back({acc.bucket.lo, acc.bucket.hi, acc.bucket.center,
                   acc.weighted.value() / acc.weight.value(), acc.count});
  }
  return out;
}

double field_value(const AggregateRecord& r, RecordField field) noexcept {
  switch (field) {
    case RecordField::Risk: return r.risk;
    case RecordField::KoInvariant: return r.ko_invariant;
    case RecordField::Cost: return r.cost;
    case RecordField::CostInvariant: return r.cost_invariant;
    case RecordField::SigmaD: return r.sigma_d;
    case RecordField::MeanBetRisk: return r.risk / static_cast<double>(r.n);
    case RecordField::MeanBetDollars: return r.dollar_volume / static_cast<double>(r.n);
  }
  return 0.0;
}

std::vector<ConditionalMean> conditional_mean_by_N(std::span<const AggregateRecord> records,
                                                   RecordField field, std::size_t min_count) {
  // Per-bet quantities are averaged over bets, i.e. each day weighs N.
  const bool per_bet = field == RecordField::MeanBetRisk || field == RecordField::MeanBetDollars;
  std::vector<std::size_t> n;
  std::vector<double> values, weights;
  n.reserve(records.size());
  values.reserve(records.size());
  for (const AggregateRecord& r : records) {
    n.push_back(r.n);
    values.push_back(field_value(r, field));
    if (per_bet) weights.push_back(static_cast<double>(r.n));
  }
  return conditional_mean_by_N(n, values, weights, min_count);
}

RegressionResult ols_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n)
    throw Error(ErrorCode::InsufficientPoints, std::to_string(n) + " point(s), need 3");
  const double mx = compensated_mean(x);
  const double my = compensated_mean(y);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0))
    throw Error(ErrorCode::InsufficientPoints, "regressor has no spread");
  RegressionResult fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  fit.n_points = n;
  CompensatedSum ss_res;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ss_res.add(e * e);
  }
  fit.r_squared =
      syy.value() > 0.0 ? std::clamp(1.0 - ss_res.value() / syy.value(), 0.0, 1.0) : 1.0;
  return fit;
}

RegressionResult loglog_ols(std::span<const ConditionalMean> table) {
  std::vector<double> x, y;
  for (const ConditionalMean& row : table) {
    if (!(row.mean > 0.0)) continue;
    x.push_back(std::log10(row.center));
    y.push_back(std::log10(row.mean));
  }
  return ols_line(x, y);
}

CalibrationResult calibrate_Y(std::span<const AggregateRecord> records, bool with_intercept) {
  std::vector<double> x1, x2, y;
  for (const AggregateRecord& r : records) {
    if (!(r.c0_spd > 0.0) || !(r.c0_imp > 0.0) || !std::isfinite(r.ko_invariant)) continue;
    x1.push_back(r.c0_spd);
    x2.push_back(r.c0_imp);
    y.push_back(r.ko_invariant);
  }
  const std::size_t n = y.size();
  if (n < 10)
    throw Error(ErrorCode::InsufficientPoints,
                std::to_string(n) + " record(s) with positive costs, need 10");

  double m1 = 0.0, m2 = 0.0, my = 0.0;
  if (with_intercept) {
    m1 = compensated_mean(x1);
    m2 = compensated_mean(x2);
    my = compensated_mean(y);
  }
  CompensatedSum a11, a12, a22, b1, b2;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = x1[i] - m1, v = x2[i] - m2, w = y[i] - my;
    a11.add(u * u);
    a12.add(u * v);
    a22.add(v * v);
    b1.add(u * w);
    b2.add(v * w);
  }
  // Solve in the column-normalized basis; the determinant there is
  // 1 - cos^2 of the angle between the regressors.
  const double s1 = std::sqrt(a11.value());
  const double s2 = std::sqrt(a22.value());
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw Error(ErrorCode::SingularDesign, "constant regressor");
  const double r12 = a12.value() / (s1 * s2);
  const double det = 1.0 - r12 * r12;
  if (!(det > 1e-10)) throw Error(ErrorCode::SingularDesign, "collinear cost components");
  const double c1 = b1.value() / s1;
  const double c2 = b2.value() / s2;

  CalibrationResult out;
  out.y_spd = (c1 - r12 * c2) / det / s1;
  out.y_imp = (c2 - r12 * c1) / det / s2;
  out.intercept = with_intercept ? my - out.y_spd * m1 - out.y_imp * m2 : 0.0;
  out.n_points = n;
  out.has_negative = out.y_spd < 0.0 || out.y_imp < 0.0;

  CompensatedSum ss_res, ss_tot;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - out.intercept - out.y_spd * x1[i] - out.y_imp * x2[i];
    const double d = y[i] - my;  // my == 0 without intercept: zero-model baseline
    ss_res.add(e * e);
    ss_tot.add(d * d);
  }
  out.r_squared = std::clamp(1.0 - ss_res.value() / ss_tot.value(), 0.0, 1.0);
  return out;
}

DispersionStats dispersion(std::span<const double> values) {
  if (values.size() < 2)
    throw Error(ErrorCode::InsufficientPoints, "dispersion needs at least two values");
  DispersionStats s;
  s.mean = shifted_mean(values);
  if (!(s.mean > 0.0)) throw Error(ErrorCode::NonPositiveMean, "mean is not positive");
  CompensatedSum sq, abs_dev;
  for (double x : values) {
    const double d = x - s.mean;
    sq.add(d * d);
    abs_dev.add(std::abs(d));
  }
  const double n = static_cast<double>(values.size());
  s.std_dev = std::sqrt(sq.value() / n);
  s.mad = abs_dev.value() / n;
  s.cv = s.std_dev / s.mean;
  s.cv_mad = s.mad / s.mean;
  return s;
}

ExponentTable per_stock_exponents(std::span<const AggregateRecord> records,
                                  std::size_t min_count) {
  std::map<std::string, std::vector<std::size_t>> by_symbol;
  for (std::size_t i = 0; i < records.size(); ++i) by_symbol[records[i].symbol].push_back(i);

  struct Group {
    const std::string* symbol;
    const std::vector<std::size_t>* idx;
  };
  std::vector<Group> groups;
  groups.reserve(by_symbol.size());
  for (const auto& [symbol, idx] : by_symbol) groups.push_back({&symbol, &idx});

  std::vector<std::optional<StockExponents>> rows(groups.size());
  std::vector<std::string> failures(groups.size());
  const auto ng = static_cast<std::ptrdiff_t>(groups.size());

#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t g = 0; g < ng; ++g) {
    std::vector<AggregateRecord> stock;
    stock.reserve(groups[g].idx->size());
    for (std::size_t i : *groups[g].idx) stock.push_back(records[i]);
    try {
      const auto risk = conditional_mean_by_N(stock, RecordField::MeanBetRisk, min_count);
      const auto sigma = conditional_mean_by_N(stock, RecordField::SigmaD, min_count);
      const auto dollars = conditional_mean_by_N(stock, RecordField::MeanBetDollars, min_count);
      StockExponents e;
      e.symbol = *groups[g].symbol;
      e.gamma = loglog_ols(risk).slope;
      e.nu = loglog_ols(sigma).slope;
      e.delta = loglog_ols(dollars).slope;
      e.n_buckets = risk.size();
      rows[g] = std::move(e);
    } catch (const Error& err) {
      failures[g] = err.what();
    }
  }

  ExponentTable table;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (rows[g])
      table.rows.push_back(std::move(*rows[g]));
    else
      table.skipped.push_back({0, ErrorCode::InsufficientPoints, *groups[g].symbol + ": " + failures[g]});
  }
  return table;
}

std::vector<HistogramBin> log_histogram(std::span<const double> values, int bins_per_decade) {
  std::vector<double> xs;
  for (double v : values)
    if (v > 0.0 && std::isfinite(v)) xs.push_back(v);
  if (xs.empty()) return {};

  const double b = bins_per_decade;
  auto edge = [b](long k) { return std::pow(10.0, static_cast<double>(k) / b); };
  auto bin_of = [&](double x) {
    auto k = static_cast<long>(log10_edge_index(x, bins_per_decade));
    if (x < edge(k)) --k;
    else if (x >= edge(k + 1)) ++k;
    return k;
  };
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const long k0 = bin_of(*lo_it);
  const long k1 = bin_of(*hi_it);

  std::vector<std::size_t> counts(static_cast<std::size_t>(k1 - k0 + 1), 0);
  for (double x : xs) ++counts[static_cast<std::size_t>(bin_of(x) - k0)];

  std::vector<HistogramBin> out;
  out.reserve(counts.size());
  const double total = static_cast<double>(xs.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const long k = k0 + static_cast<long>(j);
    const double lo = edge(k), hi = edge(k + 1);
    out.push_back({lo, hi, counts[j], static_cast<double>(counts[j]) / (total * (hi - lo))});
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  const double mx = compensated_mean(x);
  const double my = compensated_mean(y);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return sxy.value() / std::sqrt(sxx.value() * syy.value());
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace tinv
