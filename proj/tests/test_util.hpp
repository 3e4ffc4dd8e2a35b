#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tinv/model.hpp"

namespace tinv::testing {

inline Metaorder bet(double shares, double vwap, std::string symbol = "AAA",
                     std::string date = "2010-01-04", Side side = Side::Buy) {
  return Metaorder{std::move(symbol), std::move(date), side, shares, vwap};
}

inline DailyBar bar(double open, double high, double low, double close, std::string symbol = "AAA",
                    std::string date = "2010-01-04", double market_volume = 1e6,
                    std::int64_t market_trades = 10000, double spread = 0.01) {
  return DailyBar{std::move(symbol), std::move(date), open, high, low, close,
                  market_volume,     market_trades,   spread};
}

inline StockDayPanel panel(DailyBar b, std::vector<Metaorder> bets) {
  StockDayPanel p;
  p.bar = std::move(b);
  p.bets = std::move(bets);
  return p;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace tinv::testing
