#include "tinv/costs.hpp"

#include <cmath>
#include <string>

#include "tinv/summation.hpp"

namespace tinv {

void validate(const CostCoefficients& coefficients) {
  if (!(coefficients.y_spd >= 0.0) || !(coefficients.y_imp >= 0.0))
    throw Error(ErrorCode::InvalidConfig, "cost coefficients must be non-negative");
  if (coefficients.y_spd == 0.0 && coefficients.y_imp == 0.0)
    throw Error(ErrorCode::InvalidConfig, "cost coefficients cannot both be zero");
}

double bet_impact_cost(double sigma_d, const Metaorder& bet, double market_volume) {
  if (bet.shares > market_volume)
    throw Error(ErrorCode::ParticipationExceedsOne,
                bet.symbol + " " + bet.date + ": bet larger than market volume");
  return sigma_d * bet.shares * bet.vwap * std::sqrt(bet.shares / market_volume);
}

DailyCostComponents daily_cost_components(const StockDayPanel& panel, double sigma_d) {
  CompensatedSum spread, impact;
  for (const Metaorder& bet : panel.bets) {
    spread.add(bet_spread_cost(panel.bar.avg_spread, bet));
    impact.add(bet_impact_cost(sigma_d, bet, panel.bar.market_volume));
  }
  const double n = static_cast<double>(panel.n());
  return {spread.value() / n, impact.value() / n};
}

CostShares bet_cost_shares(double spread_cost, double impact_cost) noexcept {
  const double spread = spread_cost / (spread_cost + impact_cost);
  return {spread, 1.0 - spread};
}

std::size_t ParticipationBuckets::count() const noexcept {
  return static_cast<std::size_t>(std::llround(std::log10(hi / lo) * per_decade));
}

double ParticipationBuckets::edge(std::size_t k) const noexcept {
  return lo * std::pow(10.0, static_cast<double>(k) / per_decade);
}

std::size_t ParticipationBuckets::index(double participation) const noexcept {
  const std::size_t n = count();
  if (!(participation >= lo) || participation > hi) return n;
  if (participation == hi) return n - 1;
  auto k = static_cast<std::size_t>(std::floor(std::log10(participation / lo) * per_decade));
  // Snap log10 rounding at the edges.
  if (k >= n) k = n - 1;
  if (k > 0 && participation < edge(k)) --k;
  else if (k + 1 < n && participation >= edge(k + 1)) ++k;
  return k;
}

std::vector<CostRatioBucket> cost_ratio_profile(std::span<const StockDayPanel> panels,
                                                std::span<const double> sigmas,
                                                const ParticipationBuckets& buckets) {
  const std::size_t nb = buckets.count();
  std::vector<CompensatedSum> spread(nb);
  std::vector<std::size_t> count(nb, 0);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const StockDayPanel& panel = panels[p];
    for (const Metaorder& bet : panel.bets) {
      const std::size_t k = buckets.index(bet.shares / panel.bar.market_volume);
      if (k >= nb) continue;
      const CostShares shares =
          bet_cost_shares(bet_spread_cost(panel.bar.avg_spread, bet),
                          bet_impact_cost(sigmas[p], bet, panel.bar.market_volume));
      spread[k].add(shares.spread);
      ++count[k];
    }
  }
  std::vector<CostRatioBucket> out;
  for (std::size_t k = 0; k < nb; ++k) {
    if (count[k] == 0) continue;
    const double s = spread[k].value() / static_cast<double>(count[k]);
    out.push_back({buckets.edge(k), buckets.edge(k + 1), count[k], s, 1.0 - s});
  }
  return out;
}

}  // namespace tinv
