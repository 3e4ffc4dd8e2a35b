#include "tinv/invariance.hpp"

#include <algorithm>
#include <cmath>

#include "tinv/summation.hpp"

namespace tinv {

double kyle_obizhaeva_I(double risk, std::size_t n) noexcept {
  const double nd = static_cast<double>(n);
  return risk / (nd * std::sqrt(nd));
}

InvariantSet rescaled_invariants(double ko_invariant, const DailyCostComponents& components,
                                 const CostCoefficients& coefficients) {
  const double spread = coefficients.y_spd * components.c0_spd;
  const double impact = coefficients.y_imp * components.c0_imp;
  if (!(spread > 0.0)) throw Error(ErrorCode::DegenerateCost, "zero spread cost");
  if (!(impact > 0.0)) throw Error(ErrorCode::DegenerateCost, "zero impact cost");
  return {ko_invariant, ko_invariant / (spread + impact), ko_invariant / spread,
          ko_invariant / impact};
}

double moment_m(std::span<const double> volumes) {
  // m is scale free; normalizing by the largest volume makes equal volumes
  // give exactly 1 and keeps v^{3/2} well inside double range.
  const double top = *std::max_element(volumes.begin(), volumes.end());
  CompensatedSum linear, three_halves;
  for (double v : volumes) {
    const double w = v / top;
    linear.add(w);
    three_halves.add(w * std::sqrt(w));
  }
  const double n = static_cast<double>(volumes.size());
  const double mean_w = linear.value() / n;
  const double m = (three_halves.value() / n) / (mean_w * std::sqrt(mean_w));
  return std::max(1.0, m);
}

double moment_m(const StockDayPanel& panel) {
  std::vector<double> volumes;
  volumes.reserve(panel.n());
  for (const Metaorder& bet : panel.bets) volumes.push_back(bet.shares);
  return moment_m(volumes);
}

double participation_eta(const StockDayPanel& panel) noexcept {
  return compensated_sum(panel.bets, [](const Metaorder& bet) { return bet.shares; }) /
         panel.bar.market_volume;
}

double trade_fraction_xi(const StockDayPanel& panel) noexcept {
  return static_cast<double>(panel.n()) / static_cast<double>(panel.bar.market_trades);
}

double analytic_cost_invariant(double m, double eta, double xi, double spread_c,
                               const CostCoefficients& coefficients) noexcept {
  return 1.0 / (coefficients.y_spd * spread_c * std::sqrt(xi) +
                coefficients.y_imp * m * std::sqrt(eta));
}

double spread_constant_c(const DailyBar& bar, double sigma_d, double price) {
  if (!(sigma_d > 0.0)) throw Error(ErrorCode::ZeroVolatility, bar.symbol + " " + bar.date);
  return bar.avg_spread * std::sqrt(static_cast<double>(bar.market_trades)) / (price * sigma_d);
}

}  // namespace tinv
