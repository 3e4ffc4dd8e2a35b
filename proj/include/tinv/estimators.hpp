#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tinv/model.hpp"

namespace tinv {

enum class VolEstimatorKind { HighLow, RogersSatchell, MonthlyAvgHighLow };

std::string_view to_string(VolEstimatorKind kind) noexcept;
// Accepts the CLI spellings "highlow", "rs" and "monthly".
std::optional<VolEstimatorKind> parse_vol_kind(std::string_view text) noexcept;

struct VolEstimate {
  double sigma = 0.0;
  bool zero_volatility = false;  // degenerate day, excluded downstream
};

// (high - low) / open.
VolEstimate vol_high_low(const DailyBar& bar) noexcept;

// ln(H/O) ln(H/C) + ln(L/O) ln(L/C); non-negative whenever L <= O,C <= H.
double rogers_satchell_radicand(const DailyBar& bar) noexcept;
VolEstimate vol_rogers_satchell(const DailyBar& bar) noexcept;

// Mean high-low volatility over the bars of the same calendar (year, month),
// keyed by date. Expects the bars of a single symbol.
std::map<std::string, double> vol_monthly_avg(std::span<const DailyBar> bars);

// R_i = sigma_d * v_i * p_i
inline double bet_risk(double sigma_d, const Metaorder& bet) noexcept {
  return sigma_d * bet.shares * bet.vwap;
}

// R = sum of bet risks, compensated, in bet order.
double daily_risk(const StockDayPanel& panel, double sigma_d) noexcept;

}  // namespace tinv
