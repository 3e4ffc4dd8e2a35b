#pragma once

#include <span>
#include <vector>

#include "tinv/costs.hpp"
#include "tinv/model.hpp"

namespace tinv {

// Every coefficient-independent field of one stock-day. sigma_d must be > 0.
AggregateRecord aggregate_panel(const StockDayPanel& panel, double sigma_d, PriceProxy proxy);

// aggregate_panel over all panels, OpenMP-parallel. Output order follows the
// panels and is byte-identical to compute_records_serial for any thread count.
std::vector<AggregateRecord> compute_records(std::span<const StockDayPanel> panels,
                                             std::span<const double> sigmas, PriceProxy proxy);

// Plain loop; the reference the parallel kernel is tested against.
std::vector<AggregateRecord> compute_records_serial(std::span<const StockDayPanel> panels,
                                                    std::span<const double> sigmas,
                                                    PriceProxy proxy);

// Fills C, C_spd, C_imp and the three rescaled invariants. Throws
// DegenerateCost when a denominator vanishes.
void apply_coefficients(AggregateRecord& record, const CostCoefficients& coefficients);

}  // namespace tinv
