#pragma once

#include <cmath>
#include <span>

#include "tinv/costs.hpp"
#include "tinv/model.hpp"

namespace tinv {

// I = R / N^{3/2}
double kyle_obizhaeva_I(double risk, std::size_t n) noexcept;

// I rescaled by total, spread-only and impact-only cost.
struct InvariantSet {
  double ko = 0.0;
  double total = 0.0;
  double spread = 0.0;
  double impact = 0.0;
};

// Throws DegenerateCost when any of the three denominators is zero.
InvariantSet rescaled_invariants(double ko_invariant, const DailyCostComponents& components,
                                 const CostCoefficients& coefficients);

// mean(v^{3/2}) / mean(v)^{3/2}; >= 1, and exactly 1 for constant volumes.
double moment_m(std::span<const double> volumes);
double moment_m(const StockDayPanel& panel);

// eta = sum(v_i) / V_d
double participation_eta(const StockDayPanel& panel) noexcept;

// xi = N / N_d
double trade_fraction_xi(const StockDayPanel& panel) noexcept;

// Closed forms that hold when all bets of the day trade at one price.
inline double analytic_impact_invariant(double m, double eta, double y_imp) noexcept {
  return 1.0 / (y_imp * m * std::sqrt(eta));
}
double analytic_cost_invariant(double m, double eta, double xi, double spread_c,
                               const CostCoefficients& coefficients) noexcept;

// c in S = c p sigma_d / sqrt(N_d); throws ZeroVolatility when sigma_d <= 0.
double spread_constant_c(const DailyBar& bar, double sigma_d, double price);

}  // namespace tinv

