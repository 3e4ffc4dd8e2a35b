#include "tinv/analysis.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "tinv/aggregate.hpp"
#include "tinv/invariance.hpp"
#include "tinv/summation.hpp"

namespace tinv {
namespace {

using GroupKey = std::function<std::optional<std::string>(const AggregateRecord&)>;

std::map<std::string, std::vector<AggregateRecord>> group_records(
    std::span<const AggregateRecord> records, const GroupKey& key) {
  std::map<std::string, std::vector<AggregateRecord>> groups;
  for (const AggregateRecord& r : records)
    if (auto k = key(r)) groups[*k].push_back(r);
  return groups;
}

void append_conditional_rows(std::vector<ConditionalRow>& out, std::string_view grouping,
                             const std::string& group, std::span<const AggregateRecord> records,
                             std::size_t min_count) {
  const auto risk = conditional_mean_by_N(records, RecordField::Risk, min_count);
  const auto ko = conditional_mean_by_N(records, RecordField::KoInvariant, min_count);
  for (std::size_t i = 0; i < risk.size(); ++i)
    out.push_back({std::string(grouping), group, risk[i], ko[i].mean});
}

std::vector<GroupFit> fit_groups(std::span<const AggregateRecord> records, const GroupKey& key,
                                 std::string_view label, std::size_t min_count,
                                 std::vector<Diagnostic>& diagnostics) {
  std::vector<GroupFit> fits;
  for (const auto& [group, rows] : group_records(records, key)) {
    try {
      fits.push_back({group, loglog_ols(conditional_mean_by_N(rows, RecordField::Risk, min_count))});
    } catch (const Error& e) {
      diagnostics.push_back({0, e.code(), std::string(label) + " " + group + ": " + e.what()});
    }
  }
  return fits;
}

template <class Fn>
std::vector<double> collect(std::span<const AggregateRecord> records, Fn fn) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const AggregateRecord& r : records) out.push_back(fn(r));
  return out;
}

}  // namespace

std::string_view to_string(GroupBy group_by) noexcept {
  switch (group_by) {
    case GroupBy::None: return "none";
    case GroupBy::Stock: return "stock";
    case GroupBy::Sector: return "sector";
    case GroupBy::Cap: return "cap";
    case GroupBy::Year: return "year";
  }
  return "none";
}

std::optional<GroupBy> parse_group_by(std::string_view text) noexcept {
  if (text == "none") return GroupBy::None;
  if (text == "stock") return GroupBy::Stock;
  if (text == "sector") return GroupBy::Sector;
  if (text == "cap") return GroupBy::Cap;
  if (text == "year") return GroupBy::Year;
  return std::nullopt;
}

std::vector<VolEstimate> panel_volatilities(std::span<const StockDayPanel> panels,
                                            std::span<const DailyBar> bars, VolEstimatorKind kind) {
  std::vector<VolEstimate> out(panels.size());
  if (kind == VolEstimatorKind::MonthlyAvgHighLow) {
    std::map<std::string, std::vector<DailyBar>> by_symbol;
    for (const DailyBar& bar : bars) by_symbol[bar.symbol].push_back(bar);
    std::map<std::string, std::map<std::string, double>> monthly;
    for (const auto& [symbol, rows] : by_symbol) monthly.emplace(symbol, vol_monthly_avg(rows));
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const double sigma = monthly.at(panels[i].bar.symbol).at(panels[i].bar.date);
      out[i] = {sigma, !(sigma > 0.0)};
    }
    return out;
  }
  const auto n = static_cast<std::ptrdiff_t>(panels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = kind == VolEstimatorKind::RogersSatchell ? vol_rogers_satchell(panels[i].bar)
                                                       : vol_high_low(panels[i].bar);
  return out;
}

AnalysisResult run_analysis(const AnalysisInput& input, const AnalysisOptions& options) {
  AnalysisResult res;
  res.options = options;
  res.n_metaorders = input.metaorders.size();
  res.n_bars = input.bars.size();

  JoinResult joined = join_panels(input.metaorders, input.bars);
  res.n_panels = joined.panels.size();
  res.diagnostics = std::move(joined.diagnostics);

  const auto vols = panel_volatilities(joined.panels, input.bars, options.vol);
  std::vector<StockDayPanel> panels;
  std::vector<double> sigmas;
  for (std::size_t i = 0; i < joined.panels.size(); ++i) {
    if (vols[i].zero_volatility) {
      ++res.n_zero_volatility;
      continue;
    }
    panels.push_back(std::move(joined.panels[i]));
    sigmas.push_back(vols[i].sigma);
  }
  if (res.n_zero_volatility > 0)
    res.notices.push_back(std::to_string(res.n_zero_volatility) +
                          " stock-day(s) with zero volatility excluded");

  std::vector<AggregateRecord> records = compute_records(panels, sigmas, options.price);

  if (options.calibrate) {
    res.calibration = calibrate_Y(records, options.calibrate_intercept);
    res.coefficients = {res.calibration->y_spd, res.calibration->y_imp};
    res.coefficient_source = "calibrated";
    if (res.calibration->has_negative)
      res.notices.push_back("calibration produced a negative coefficient");
  } else if (options.coefficients) {
    res.coefficients = *options.coefficients;
    res.coefficient_source = "explicit";
  } else {
    res.coefficients = kDefaultCoefficients;
    res.coefficient_source = "default";
    res.notices.push_back("using default cost coefficients Y_spd=3.5, Y_imp=1.5 (OLS calibration on metaorder data)");
  }

  for (AggregateRecord& r : records) {
    try {
      apply_coefficients(r, res.coefficients);
      res.records.push_back(std::move(r));
    } catch (const Error& e) {
      ++res.n_degenerate_cost;
      res.diagnostics.push_back({0, e.code(), r.symbol + " " + r.date + ": " + e.what()});
    }
  }
  const std::span<const AggregateRecord> recs = res.records;
  const std::size_t min_count = options.min_bucket_count;

  std::map<std::string, const StockMeta*> meta;
  for (const StockMeta& m : input.meta) meta[m.symbol] = &m;
  if (!input.meta.empty()) {
    std::map<std::string, bool> reported;
    for (const AggregateRecord& r : recs)
      if (!meta.contains(r.symbol) && !reported[r.symbol]) {
        reported[r.symbol] = true;
        res.diagnostics.push_back({0, ErrorCode::UnknownSymbol, r.symbol + " has no sector/cap metadata"});
      }
  }
  const GroupKey by_stock = [](const AggregateRecord& r) { return std::optional(r.symbol); };
  const GroupKey by_year = [](const AggregateRecord& r) { return std::optional(r.date.substr(0, 4)); };
  const GroupKey by_sector = [&meta](const AggregateRecord& r) -> std::optional<std::string> {
    const auto it = meta.find(r.symbol);
    if (it == meta.end()) return std::nullopt;
    return std::string(to_string(it->second->sector));
  };
  const GroupKey by_cap = [&meta](const AggregateRecord& r) -> std::optional<std::string> {
    const auto it = meta.find(r.symbol);
    if (it == meta.end()) return std::nullopt;
    return std::string(to_string(it->second->cap));
  };

  // <R>_N and <I>_N tables.
  append_conditional_rows(res.conditional_means, "all", "all", recs, min_count);
  const GroupKey* grouped = nullptr;
  switch (options.group_by) {
    case GroupBy::Stock: grouped = &by_stock; break;
    case GroupBy::Sector: grouped = &by_sector; break;
    case GroupBy::Cap: grouped = &by_cap; break;
    case GroupBy::Year: grouped = &by_year; break;
    case GroupBy::None: break;
  }
  if (grouped)
    for (const auto& [group, rows] : group_records(recs, *grouped))
      append_conditional_rows(res.conditional_means, to_string(options.group_by), group, rows, min_count);

  try {
    res.pooled_fit = loglog_ols(conditional_mean_by_N(recs, RecordField::Risk, min_count));
    res.bet_risk_fit = loglog_ols(conditional_mean_by_N(recs, RecordField::MeanBetRisk, min_count));
  } catch (const Error& e) {
    res.diagnostics.push_back({0, e.code(), std::string("pooled fit: ") + e.what()});
  }
  res.fit_by_year = fit_groups(recs, by_year, "year", min_count, res.diagnostics);
  res.fit_by_stock = fit_groups(recs, by_stock, "stock", min_count, res.diagnostics);
  if (!input.meta.empty()) {
    res.fit_by_cap = fit_groups(recs, by_cap, "cap", min_count, res.diagnostics);
    res.fit_by_sector = fit_groups(recs, by_sector, "sector", min_count, res.diagnostics);
  }

  const std::vector<std::pair<std::string, std::vector<double>>> series = {
      {"I", collect(recs, [](const auto& r) { return r.ko_invariant; })},
      {"script_I", collect(recs, [](const auto& r) { return r.cost_invariant; })},
      {"script_I_spd", collect(recs, [](const auto& r) { return r.spread_invariant; })},
      {"script_I_imp", collect(recs, [](const auto& r) { return r.impact_invariant; })},
      {"C", collect(recs, [](const auto& r) { return r.cost; })},
      {"R", collect(recs, [](const auto& r) { return r.risk; })},
      {"N", collect(recs, [](const auto& r) { return static_cast<double>(r.n); })},
      {"m", collect(recs, [](const auto& r) { return r.m; })},
      {"eta", collect(recs, [](const auto& r) { return r.eta; })},
      {"xi", collect(recs, [](const auto& r) { return r.xi; })},
      {"spread_c", collect(recs, [](const auto& r) { return r.spread_c; })},
  };
  for (const auto& [name, values] : series) {
    if (name == "R" || name == "N") continue;
    try {
      res.invariant_stats.push_back({name, values.size(), dispersion(values)});
    } catch (const Error&) {
      // fewer than two records: the table stays empty
    }
  }
  for (const auto& [name, values] : series)
    res.histograms.push_back({name, log_histogram(values, options.histogram_bins_per_decade)});

  std::vector<double> bet_risks;
  for (std::size_t p = 0; p < panels.size(); ++p)
    for (const Metaorder& bet : panels[p].bets) bet_risks.push_back(bet_risk(sigmas[p], bet));
  res.histograms.push_back({"R_i", log_histogram(bet_risks, options.histogram_bins_per_decade)});

  res.exponents = per_stock_exponents(recs, min_count);
  for (const Diagnostic& d : res.exponents.skipped) res.diagnostics.push_back(d);

  res.cost_ratios = cost_ratio_profile(panels, sigmas, options.participation);

  if (!recs.empty()) {
    res.mean_spread_share = compensated_sum(recs, [](const AggregateRecord& r) { return r.cost_spd / r.cost; }) /
                            static_cast<double>(recs.size());
  }

  // Per-stock statistics over stock-days (c) and over bets (corr).
  std::map<std::string, std::vector<double>> c_by_stock;
  for (const AggregateRecord& r : recs) c_by_stock[r.symbol].push_back(r.spread_c);
  std::vector<double> stock_c;
  for (auto& [symbol, values] : c_by_stock) stock_c.push_back(median(std::move(values)));
  res.median_spread_c = median(std::move(stock_c));

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> pairs;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    auto& [xs, ys] = pairs[panels[p].bar.symbol];
    for (const Metaorder& bet : panels[p].bets) {
      xs.push_back(sigmas[p]);
      ys.push_back(bet.shares * bet.vwap);
    }
  }
  CompensatedSum corr;
  std::size_t n_corr = 0;
  for (const auto& [symbol, xy] : pairs) {
    const double c = pearson(xy.first, xy.second);
    if (std::isfinite(c)) {
      corr.add(c);
      ++n_corr;
    }
  }
  res.vol_size_correlation = n_corr > 0 ? corr.value() / static_cast<double>(n_corr) : 0.0;
  return res;
}

}  // namespace tinv
