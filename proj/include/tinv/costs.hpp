#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tinv/model.hpp"

namespace tinv {

// Prefactors of the spread and impact cost terms.
struct CostCoefficients {
  double y_spd = 3.5;
  double y_imp = 1.5;
};

// Throws InvalidConfig when a coefficient is negative or both are zero.
void validate(const CostCoefficients& coefficients);

// Per-bet averages of the two cost terms, before the Y prefactors.
struct DailyCostComponents {
  double c0_spd = 0.0;
  double c0_imp = 0.0;
};

// S * v
inline double bet_spread_cost(double spread, const Metaorder& bet) noexcept {
  return spread * bet.shares;
}

// sigma_d * v * p * sqrt(v / V_d); throws ParticipationExceedsOne if v > V_d.
double bet_impact_cost(double sigma_d, const Metaorder& bet, double market_volume);

DailyCostComponents daily_cost_components(const StockDayPanel& panel, double sigma_d);

inline double total_cost(const DailyCostComponents& c, const CostCoefficients& y) noexcept {
  return y.y_spd * c.c0_spd + y.y_imp * c.c0_imp;
}

// Shares of a single bet's cost, c_spd/c and c_imp/c. The impact share is
// computed as 1 - spread share so the two always sum to exactly one.
struct CostShares {
  double spread = 0.0;
  double impact = 0.0;
};
CostShares bet_cost_shares(double spread_cost, double impact_cost) noexcept;

// Logarithmic participation (v / V_d) buckets.
struct ParticipationBuckets {
  double lo = 1e-6;
  double hi = 1.0;
  int per_decade = 10;

  std::size_t count() const noexcept;
  double edge(std::size_t k) const noexcept;
  // Bucket index of a participation, or count() when outside [lo, hi].
  std::size_t index(double participation) const noexcept;
};

struct CostRatioBucket {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double mean_spread_share = 0.0;
  double mean_impact_share = 0.0;
};

// Mean per-bet cost shares by participation bucket; only occupied buckets are
// returned. `sigmas[k]` is the volatility used for `panels[k]`.
std::vector<CostRatioBucket> cost_ratio_profile(std::span<const StockDayPanel> panels,
                                                std::span<const double> sigmas,
                                                const ParticipationBuckets& buckets = {});

// Participation at which spread and impact cost of a bet are equal: (S/(sigma p))^2.
inline double cost_crossover_participation(double spread, double sigma_d, double price) noexcept {
  const double r = spread / (sigma_d * price);
  return r * r;
}

}  // namespace tinv
