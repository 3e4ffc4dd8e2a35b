#include "tinv/estimators.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "tinv/summation.hpp"

namespace tinv {

std::string_view to_string(VolEstimatorKind kind) noexcept {
  switch (kind) {
    case VolEstimatorKind::HighLow: return "highlow";
    case VolEstimatorKind::RogersSatchell: return "rs";
    case VolEstimatorKind::MonthlyAvgHighLow: return "monthly";
  }
  return "highlow";
}

std::optional<VolEstimatorKind> parse_vol_kind(std::string_view text) noexcept {
  if (text == "highlow") return VolEstimatorKind::HighLow;
  if (text == "rs") return VolEstimatorKind::RogersSatchell;
  if (text == "monthly") return VolEstimatorKind::MonthlyAvgHighLow;
  return std::nullopt;
}

VolEstimate vol_high_low(const DailyBar& bar) noexcept {
  const double sigma = (bar.high - bar.low) / bar.open;
  return {sigma, !(sigma > 0.0)};
}

double rogers_satchell_radicand(const DailyBar& bar) noexcept {
  const double hi_open = std::log(bar.high / bar.open);
  const double hi_close = std::log(bar.high / bar.close);
  const double lo_open = std::log(bar.low / bar.open);
  const double lo_close = std::log(bar.low / bar.close);
  return hi_open * hi_close + lo_open * lo_close;
}

VolEstimate vol_rogers_satchell(const DailyBar& bar) noexcept {
  // Both products are >= 0 for a valid bar; only rounding can push below 0.
  const double radicand = rogers_satchell_radicand(bar);
  if (!(radicand > 0.0)) return {0.0, true};
  return {std::sqrt(radicand), false};
}

std::map<std::string, double> vol_monthly_avg(std::span<const DailyBar> bars) {
  std::map<std::pair<int, int>, std::vector<double>> by_month;
  for (const DailyBar& bar : bars)
    by_month[{date_year(bar.date), date_month(bar.date)}].push_back(vol_high_low(bar).sigma);

  std::map<std::pair<int, int>, double> month_mean;
  for (const auto& [month, sigmas] : by_month) month_mean[month] = compensated_mean(sigmas);

  std::map<std::string, double> out;
  for (const DailyBar& bar : bars)
    out[bar.date] = month_mean[{date_year(bar.date), date_month(bar.date)}];
  return out;
}

double daily_risk(const StockDayPanel& panel, double sigma_d) noexcept {
  return compensated_sum(panel.bets, [sigma_d](const Metaorder& bet) { return bet_risk(sigma_d, bet); });
}

}  // namespace tinv
