#include "tinv/model.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

#include "tinv/summation.hpp"

namespace tinv {
namespace {

constexpr std::array<std::string_view, kSectorCount> kSectorNames = {
    "basic_materials", "communications", "consumer_cyclical",
    "consumer_non_cyclical", "energy", "financial",
    "industrial", "technology", "utilities",
};

constexpr std::array<std::string_view, kCapCount> kCapNames = {"large", "mid", "small"};

int parse_digits(std::string_view s) noexcept {
  int v = 0;
  for (char ch : s) v = v * 10 + (ch - '0');
  return v;
}

}  // namespace

std::string_view to_string(Side side) noexcept { return side == Side::Buy ? "buy" : "sell"; }

std::string_view to_string(Sector sector) noexcept {
  return kSectorNames[static_cast<std::size_t>(sector)];
}

std::string_view to_string(CapBucket cap) noexcept {
  return kCapNames[static_cast<std::size_t>(cap)];
}

std::optional<Side> parse_side(std::string_view text) noexcept {
  if (text == "buy") return Side::Buy;
  if (text == "sell") return Side::Sell;
  return std::nullopt;
}

std::optional<Sector> parse_sector(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kSectorNames.size(); ++i)
    if (kSectorNames[i] == text) return static_cast<Sector>(i);
  return std::nullopt;
}

std::optional<CapBucket> parse_cap(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kCapNames.size(); ++i)
    if (kCapNames[i] == text) return static_cast<CapBucket>(i);
  return std::nullopt;
}

bool is_iso_date(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (text[i] < '0' || text[i] > '9') return false;
  const std::chrono::year_month_day ymd{
      std::chrono::year{parse_digits(text.substr(0, 4))},
      std::chrono::month{static_cast<unsigned>(parse_digits(text.substr(5, 2)))},
      std::chrono::day{static_cast<unsigned>(parse_digits(text.substr(8, 2)))}};
  return ymd.ok();
}

int date_year(std::string_view iso_date) noexcept { return parse_digits(iso_date.substr(0, 4)); }

int date_month(std::string_view iso_date) noexcept { return parse_digits(iso_date.substr(5, 2)); }

std::optional<ErrorCode> validate(const Metaorder& bet) noexcept {
  if (!is_iso_date(bet.date)) return ErrorCode::BadDate;
  if (!(bet.shares > 0.0)) return ErrorCode::NonPositiveVolume;
  if (!(bet.vwap > 0.0)) return ErrorCode::NonPositivePrice;
  return std::nullopt;
}

std::optional<ErrorCode> validate(const DailyBar& bar) noexcept {
  if (!is_iso_date(bar.date)) return ErrorCode::BadDate;
  if (!(bar.open > 0.0) || !(bar.high > 0.0) || !(bar.low > 0.0) || !(bar.close > 0.0) ||
      !(bar.market_volume > 0.0) || bar.market_trades < 1 || !(bar.avg_spread > 0.0))
    return ErrorCode::NonPositiveField;
  if (!(bar.low <= bar.high) || !(bar.low <= bar.open && bar.open <= bar.high) ||
      !(bar.low <= bar.close && bar.close <= bar.high))
    return ErrorCode::OHLCViolation;
  return std::nullopt;
}

JoinResult join_panels(std::span<const Metaorder> bets, std::span<const DailyBar> bars) {
  using Key = std::pair<std::string_view, std::string_view>;

  // Bars sorted by (symbol, date) so each bar's predecessor is adjacent.
  std::vector<std::size_t> bar_order(bars.size());
  std::iota(bar_order.begin(), bar_order.end(), std::size_t{0});
  std::sort(bar_order.begin(), bar_order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(bars[a].symbol, bars[a].date) < std::tie(bars[b].symbol, bars[b].date);
  });
  std::map<Key, std::size_t> bar_rank;  // key -> position in bar_order
  for (std::size_t r = 0; r < bar_order.size(); ++r) {
    const DailyBar& bar = bars[bar_order[r]];
    if (r > 0) {
      const DailyBar& prev = bars[bar_order[r - 1]];
      if (prev.symbol == bar.symbol && prev.date == bar.date)
        throw Error(ErrorCode::DuplicateBar, bar.symbol + " " + bar.date);
    }
    bar_rank.emplace(Key{bar.symbol, bar.date}, r);
  }

  // std::map keeps keys ordered; bet indices are appended in input order.
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < bets.size(); ++i)
    groups[Key{bets[i].symbol, bets[i].date}].push_back(i);

  JoinResult result;
  for (const auto& [key, idx] : groups) {
    const auto it = bar_rank.find(key);
    if (it == bar_rank.end()) {
      result.dropped_bets += idx.size();
      result.diagnostics.push_back({idx.front() + 1, ErrorCode::MissingBar,
                                    std::string(key.first) + " " + std::string(key.second) + ": " +
                                        std::to_string(idx.size()) + " bet(s) without a bar"});
      continue;
    }
    const std::size_t rank = it->second;
    StockDayPanel panel;
    panel.bar = bars[bar_order[rank]];
    if (rank > 0 && bars[bar_order[rank - 1]].symbol == panel.bar.symbol)
      panel.prev_close = bars[bar_order[rank - 1]].close;
    panel.bets.reserve(idx.size());
    CompensatedSum volume;
    for (std::size_t i : idx) {
      panel.bets.push_back(bets[i]);
      volume.add(bets[i].shares);
    }
    if (volume.value() > panel.bar.market_volume) {
      result.dropped_bets += idx.size();
      result.diagnostics.push_back({idx.front() + 1, ErrorCode::VolumeExceedsMarket,
                                    panel.bar.symbol + " " + panel.bar.date +
                                        ": bet volume exceeds market volume"});
      continue;
    }
    result.panels.push_back(std::move(panel));
  }
  return result;
}

double price_proxy(const StockDayPanel& panel, PriceProxy kind) noexcept {
  if (kind == PriceProxy::PreviousClose && panel.prev_close) return *panel.prev_close;
  CompensatedSum dollars, shares;
  for (const Metaorder& bet : panel.bets) {
    dollars.add(bet.shares * bet.vwap);
    shares.add(bet.shares);
  }
  return dollars.value() / shares.value();
}

}  // namespace tinv
