#include "tinv/aggregate.hpp"

#include <exception>

#include "tinv/estimators.hpp"
#include "tinv/invariance.hpp"
#include "tinv/summation.hpp"

namespace tinv {

AggregateRecord aggregate_panel(const StockDayPanel& panel, double sigma_d, PriceProxy proxy) {
  AggregateRecord rec;
  rec.symbol = panel.bar.symbol;
  rec.date = panel.bar.date;
  rec.n = panel.n();
  rec.sigma_d = sigma_d;
  rec.price_proxy = price_proxy(panel, proxy);

  CompensatedSum volume, dollars;
  for (const Metaorder& bet : panel.bets) {
    volume.add(bet.shares);
    dollars.add(bet.shares * bet.vwap);
  }
  rec.volume = volume.value();
  rec.dollar_volume = dollars.value();
  rec.risk = daily_risk(panel, sigma_d);
  rec.ko_invariant = kyle_obizhaeva_I(rec.risk, rec.n);

  const DailyCostComponents comp = daily_cost_components(panel, sigma_d);
  rec.c0_spd = comp.c0_spd;
  rec.c0_imp = comp.c0_imp;

  rec.m = moment_m(panel);
  rec.eta = participation_eta(panel);
  rec.xi = trade_fraction_xi(panel);
  rec.spread_c = spread_constant_c(panel.bar, sigma_d, rec.price_proxy);
  return rec;
}

std::vector<AggregateRecord> compute_records_serial(std::span<const StockDayPanel> panels,
                                                    std::span<const double> sigmas,
                                                    PriceProxy proxy) {
  std::vector<AggregateRecord> out;
  out.reserve(panels.size());
  for (std::size_t i = 0; i < panels.size(); ++i)
    out.push_back(aggregate_panel(panels[i], sigmas[i], proxy));
  return out;
}

std::vector<AggregateRecord> compute_records(std::span<const StockDayPanel> panels,
                                             std::span<const double> sigmas, PriceProxy proxy) {
  const auto n = static_cast<std::ptrdiff_t>(panels.size());
  std::vector<AggregateRecord> out(panels.size());
  std::vector<std::exception_ptr> errors(panels.size());

#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = aggregate_panel(panels[i], sigmas[i], proxy);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  // Rethrow the first failure in panel order, as the serial loop would.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void apply_coefficients(AggregateRecord& record, const CostCoefficients& coefficients) {
  const InvariantSet inv =
      rescaled_invariants(record.ko_invariant, {record.c0_spd, record.c0_imp}, coefficients);
  record.cost_spd = coefficients.y_spd * record.c0_spd;
  record.cost_imp = coefficients.y_imp * record.c0_imp;
  record.cost = record.cost_spd + record.cost_imp;
  record.cost_invariant = inv.total;
  record.spread_invariant = inv.spread;
  record.impact_invariant = inv.impact;
}

}  // namespace tinv
