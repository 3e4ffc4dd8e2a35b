#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tinv/errors.hpp"

namespace tinv {

enum class Side { Buy, Sell };

// One bet: a metaorder completed within a single trading day.
struct Metaorder {
  std::string symbol;
  std::string date;  // ISO-8601 day, used as an opaque ordered key
  Side side = Side::Buy;
  double shares = 0.0;  // unsigned volume
  double vwap = 0.0;    // dollars per share
};

// Market context of one stock-day.
struct DailyBar {
  std::string symbol;
  std::string date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double market_volume = 0.0;      // shares traded by the whole market
  std::int64_t market_trades = 0;  // number of market trades
  double avg_spread = 0.0;         // dollars
};

enum class Sector {
  BasicMaterials,
  Communications,
  ConsumerCyclical,
  ConsumerNonCyclical,
  Energy,
  Financial,
  Industrial,
  Technology,
  Utilities,
};
inline constexpr std::size_t kSectorCount = 9;

enum class CapBucket { Large, Mid, Small };
inline constexpr std::size_t kCapCount = 3;

struct StockMeta {
  std::string symbol;
  Sector sector = Sector::BasicMaterials;
  CapBucket cap = CapBucket::Large;
};

// All bets of one (symbol, date) joined with that day's bar.
struct StockDayPanel {
  DailyBar bar;
  std::vector<Metaorder> bets;
  // Close of the most recent earlier bar of the same symbol, if any.
  std::optional<double> prev_close;

  std::size_t n() const noexcept { return bets.size(); }
};

// Derived per stock-day quantities. Costs and invariants that depend on the
// Y coefficients are zero until apply_coefficients() fills them.
struct AggregateRecord {
  std::string symbol;
  std::string date;
  std::size_t n = 0;
  double sigma_d = 0.0;
  double price_proxy = 0.0;
  double risk = 0.0;           // R = sum of sigma_d * v_i * p_i
  double volume = 0.0;         // V = sum of v_i
  double dollar_volume = 0.0;  // sum of v_i * p_i
  double c0_spd = 0.0;         // mean per-bet spread cost
  double c0_imp = 0.0;         // mean per-bet square-root impact cost
  double ko_invariant = 0.0;   // I = R / N^{3/2}
  double cost = 0.0;           // C = C_spd + C_imp
  double cost_spd = 0.0;
  double cost_imp = 0.0;
  double cost_invariant = 0.0;    // I / C
  double spread_invariant = 0.0;  // I / C_spd
  double impact_invariant = 0.0;  // I / C_imp
  double m = 0.0;                 // normalized 3/2 moment of bet volumes
  double eta = 0.0;               // V / V_d
  double xi = 0.0;                // N / N_d
  double spread_c = 0.0;          // S sqrt(N_d) / (p sigma_d)
};

std::string_view to_string(Side side) noexcept;
std::string_view to_string(Sector sector) noexcept;
std::string_view to_string(CapBucket cap) noexcept;
std::optional<Side> parse_side(std::string_view text) noexcept;
std::optional<Sector> parse_sector(std::string_view text) noexcept;
std::optional<CapBucket> parse_cap(std::string_view text) noexcept;

// Strict YYYY-MM-DD with a valid calendar day.
bool is_iso_date(std::string_view text) noexcept;
// Year / month components of an ISO date; callers pass validated dates.
int date_year(std::string_view iso_date) noexcept;
int date_month(std::string_view iso_date) noexcept;

std::optional<ErrorCode> validate(const Metaorder& bet) noexcept;
std::optional<ErrorCode> validate(const DailyBar& bar) noexcept;

struct JoinResult {
  std::vector<StockDayPanel> panels;
  std::vector<Diagnostic> diagnostics;
  std::size_t dropped_bets = 0;
};

// Groups bets by (symbol, date) and attaches the matching bar. Panels come out
// sorted by (symbol, date) whatever the input order; bets keep input order.
// Bets without a bar are dropped with a MissingBar diagnostic per key; a panel
// whose bet volume exceeds the market volume is dropped with
// VolumeExceedsMarket. Two bars for one key throw DuplicateBar.
JoinResult join_panels(std::span<const Metaorder> bets, std::span<const DailyBar> bars);

enum class PriceProxy { VwapWeighted, PreviousClose };

// Representative price p of a stock-day. PreviousClose falls back to the
// vwap-weighted price when the panel has no earlier bar.
double price_proxy(const StockDayPanel& panel, PriceProxy kind) noexcept;

}  // namespace tinv
