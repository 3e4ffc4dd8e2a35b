#include "tinv/synthgen.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "json_util.hpp"
#include "tinv/aggregate.hpp"
#include "tinv/errors.hpp"
#include "tinv/invariance.hpp"

namespace tinv {
namespace {

constexpr std::uint64_t kStockStream = ~std::uint64_t{0};
constexpr std::uint64_t kNoiseStream = ~std::uint64_t{0} - 1;
constexpr std::size_t kMaxN = 1'000'000;
constexpr double kMaxSigma = 0.5;
constexpr double kMaxEta = 0.9;
constexpr double kMinAnchoredEta = 1e-6;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct StockDay {
  DailyBar bar;
  std::vector<Metaorder> bets;
};

StockTruth draw_stock(const GeneratorConfig& cfg, std::size_t s) {
  CounterRng rng(cfg.seed, s, kStockStream);
  StockTruth t;
  t.symbol = generator_symbol(s, cfg.n_stocks);
  t.sector = static_cast<Sector>(std::min<std::size_t>(
      static_cast<std::size_t>(rng.uniform() * kSectorCount), kSectorCount - 1));
  t.cap = static_cast<CapBucket>(
      std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * kCapCount), kCapCount - 1));
  t.price = cfg.price_lo * std::pow(10.0, cfg.price_decades * rng.uniform());
  t.sigma0 = cfg.effective_sigma0() * std::pow(10.0, cfg.sigma0_decades * (rng.uniform() - 0.5));
  t.nu = cfg.nu + cfg.exponent_dispersion * rng.normal();
  t.delta = cfg.delta + cfg.exponent_dispersion * rng.normal();
  return t;
}

StockDay draw_day(const GeneratorConfig& cfg, const StockTruth& stock, std::size_t s,
                  std::size_t d, const std::string& date) {
  CounterRng rng(cfg.seed, s, d);

  // Daily bet count: discrete lognormal with mean mean_n.
  const double x = cfg.mean_n * rng.unit_lognormal(cfg.n_dispersion);
  const auto n = static_cast<std::size_t>(std::clamp<double>(std::round(x), 1.0, kMaxN));
  const double nd = static_cast<double>(n);

  const double sigma = std::min(
      kMaxSigma, stock.sigma0 * std::pow(nd, stock.nu) * rng.unit_lognormal(cfg.vol_noise));
  const double eta = std::min(kMaxEta, cfg.eta_mean * rng.unit_lognormal(cfg.eta_dispersion));
  const double xi = std::min(1.0, cfg.xi_mean * rng.unit_lognormal(cfg.xi_dispersion));

  const double p = stock.price;
  const double dollar_scale = cfg.dollar_size * std::pow(nd, stock.delta);

  StockDay out;
  out.bets.reserve(n);
  std::vector<double> volumes;
  volumes.reserve(n);
  double total_shares = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Metaorder bet;
    bet.symbol = stock.symbol;
    bet.date = date;
    bet.shares = std::max(1.0, std::round(dollar_scale * rng.unit_lognormal(cfg.bet_size_shape) / p));
    bet.vwap = p * (1.0 + cfg.price_dispersion * (2.0 * rng.uniform() - 1.0));
    bet.side = rng.uniform() < 0.5 ? Side::Buy : Side::Sell;
    total_shares += bet.shares;
    volumes.push_back(bet.shares);
    out.bets.push_back(std::move(bet));
  }

  DailyBar& bar = out.bar;
  bar.symbol = stock.symbol;
  bar.date = date;
  bar.market_trades = std::max<std::int64_t>(static_cast<std::int64_t>(n), std::llround(nd / xi));
  bar.avg_spread = cfg.spread_const_c * p * sigma / std::sqrt(static_cast<double>(bar.market_trades));
  // O = p, H = O(1 + sigma u), L = H - sigma O, so (H - L)/O = sigma.
  bar.open = p;
  bar.high = p * (1.0 + sigma * rng.uniform());
  bar.low = bar.high - sigma * p;
  bar.close = std::clamp(bar.low + (bar.high - bar.low) * rng.uniform(), bar.low, bar.high);

  double day_eta = eta;
  if (cfg.anchor_cost) {
    const double xi_day = nd / static_cast<double>(bar.market_trades);
    const double spread_term = cfg.y_true.y_spd * cfg.spread_const_c * std::sqrt(xi_day);
    const double root = (1.0 - spread_term) / (cfg.y_true.y_imp * moment_m(volumes));
    // root <= 0: the spread term alone exceeds one; take the closest eta.
    day_eta = root > 0.0 ? std::clamp(root * root, kMinAnchoredEta, kMaxEta) : kMinAnchoredEta;
  }
  bar.market_volume = total_shares / day_eta;
  return out;
}

SyntheticPanel assemble(const GeneratorConfig& cfg, std::vector<StockTruth> stocks,
                        std::vector<StockDay> days) {
  SyntheticPanel panel;
  std::size_t n_bets = 0;
  for (const StockDay& day : days) n_bets += day.bets.size();
  panel.metaorders.reserve(n_bets);
  panel.bars.reserve(days.size());
  for (StockDay& day : days) {
    panel.bars.push_back(std::move(day.bar));
    for (Metaorder& bet : day.bets) panel.metaorders.push_back(std::move(bet));
  }
  panel.meta.reserve(stocks.size());
  for (const StockTruth& t : stocks) panel.meta.push_back({t.symbol, t.sector, t.cap});
  panel.truth.config = cfg;
  panel.truth.stocks = std::move(stocks);
  return panel;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) noexcept
    : key_(mix64(mix64(mix64(seed) ^ stream) ^ (substream + 0x9E3779B97F4A7C15ULL))) {}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::unit_lognormal(double log_std) noexcept {
  const double z = normal();
  if (log_std == 0.0) return 1.0;
  return std::exp(log_std * z - 0.5 * log_std * log_std);
}

double GeneratorConfig::effective_sigma0() const noexcept {
  return sigma0 > 0.0 ? sigma0 : 0.01 / std::pow(mean_n, nu);
}

void validate(const GeneratorConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
  };
  require(c.n_stocks >= 1, "n_stocks must be >= 1");
  require(c.n_days >= 1, "n_days must be >= 1");
  require(c.mean_n >= 1.0 && std::isfinite(c.mean_n), "mean_n must be >= 1");
  require(c.n_dispersion >= 0.0 && std::isfinite(c.n_dispersion), "n_dispersion must be >= 0");
  require(c.bet_size_shape >= 0.0 && std::isfinite(c.bet_size_shape), "bet_size_shape must be >= 0");
  require(std::isfinite(c.nu) && std::isfinite(c.delta), "nu and delta must be finite");
  require(c.exponent_dispersion >= 0.0, "exponent_dispersion must be >= 0");
  require(!c.strict_three_halves || std::abs(c.nu + c.delta - 0.5) <= 1e-12,
          "strict 3/2 mode requires nu + delta = 0.5");
  require(c.eta_mean > 0.0 && c.eta_mean < 1.0, "eta_mean must lie in (0, 1)");
  require(c.xi_mean > 0.0 && c.xi_mean <= 1.0, "xi_mean must lie in (0, 1]");
  require(c.eta_dispersion >= 0.0 && c.xi_dispersion >= 0.0, "dispersions must be >= 0");
  require(c.spread_const_c > 0.0 && std::isfinite(c.spread_const_c), "spread_const_c must be > 0");
  validate(c.y_true);
  require(c.price_dispersion >= 0.0 && c.price_dispersion < 1.0, "price_dispersion must lie in [0, 1)");
  require(c.sigma0 >= 0.0 && std::isfinite(c.sigma0), "sigma0 must be >= 0");
  require(c.sigma0_decades >= 0.0 && c.price_decades >= 0.0, "decade spreads must be >= 0");
  require(c.vol_noise >= 0.0, "vol_noise must be >= 0");
  require(c.price_lo > 0.0 && std::isfinite(c.price_lo), "price_lo must be > 0");
  require(c.dollar_size > 0.0 && std::isfinite(c.dollar_size), "dollar_size must be > 0");
  require(is_iso_date(c.start_date), "start_date must be YYYY-MM-DD");
  require(!c.anchor_cost || c.y_true.y_imp > 0.0, "anchor_cost needs y_imp > 0");
}

std::string generator_symbol(std::size_t stock_index, std::size_t n_stocks) {
  std::string digits = std::to_string(stock_index);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(n_stocks > 0 ? n_stocks - 1 : 0).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "S" + digits;
}

std::vector<std::string> business_days(std::string_view start, std::size_t count) {
  using namespace std::chrono;
  auto digits = [&](std::size_t pos, std::size_t len) {
    return std::stoi(std::string(start.substr(pos, len)));
  };
  sys_days day{year{digits(0, 4)} / month{static_cast<unsigned>(digits(5, 2))} /
               std::chrono::day{static_cast<unsigned>(digits(8, 2))}};
  std::vector<std::string> out;
  out.reserve(count);
  char buf[16];
  while (out.size() < count) {
    const weekday wd{day};
    if (wd != Saturday && wd != Sunday) {
      const year_month_day ymd{day};
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                    static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
      out.emplace_back(buf);
    }
    day += days{1};
  }
  return out;
}

SyntheticPanel generate_panel_serial(const GeneratorConfig& cfg) {
  validate(cfg);
  const auto dates = business_days(cfg.start_date, cfg.n_days);
  std::vector<StockTruth> stocks;
  stocks.reserve(cfg.n_stocks);
  for (std::size_t s = 0; s < cfg.n_stocks; ++s) stocks.push_back(draw_stock(cfg, s));
  std::vector<StockDay> days;
  days.reserve(cfg.n_stocks * cfg.n_days);
  for (std::size_t s = 0; s < cfg.n_stocks; ++s)
    for (std::size_t d = 0; d < cfg.n_days; ++d) days.push_back(draw_day(cfg, stocks[s], s, d, dates[d]));
  return assemble(cfg, std::move(stocks), std::move(days));
}

SyntheticPanel generate_panel(const GeneratorConfig& cfg) {
  validate(cfg);
  const auto dates = business_days(cfg.start_date, cfg.n_days);
  const auto ns = static_cast<std::ptrdiff_t>(cfg.n_stocks);
  const auto nd = static_cast<std::ptrdiff_t>(cfg.n_days);

  std::vector<StockTruth> stocks(cfg.n_stocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < ns; ++s) stocks[s] = draw_stock(cfg, static_cast<std::size_t>(s));

  std::vector<StockDay> days(cfg.n_stocks * cfg.n_days);
  const std::ptrdiff_t total = ns * nd;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto s = static_cast<std::size_t>(k / nd);
    const auto d = static_cast<std::size_t>(k % nd);
    days[k] = draw_day(cfg, stocks[s], s, d, dates[d]);
  }
  return assemble(cfg, std::move(stocks), std::move(days));
}

std::vector<AggregateRecord> inject_cost_noise(std::span<const AggregateRecord> records,
                                               const CostCoefficients& y_true, double noise_level,
                                               std::uint64_t seed) {
  if (!(noise_level >= 0.0)) throw Error(ErrorCode::InvalidConfig, "noise_level must be >= 0");
  std::vector<AggregateRecord> out(records.begin(), records.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CounterRng rng(seed, i, kNoiseStream);
    AggregateRecord& r = out[i];
    r.ko_invariant = total_cost({r.c0_spd, r.c0_imp}, y_true) * rng.unit_lognormal(noise_level);
    apply_coefficients(r, y_true);
  }
  return out;
}

std::string ground_truth_json(const GroundTruth& truth) {
  const GeneratorConfig& c = truth.config;
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["n_stocks"] = c.n_stocks;
  j["n_days"] = c.n_days;
  j["strict_three_halves"] = c.strict_three_halves;
  j["mean_n"] = detail::round12(c.mean_n);
  j["n_dispersion"] = detail::round12(c.n_dispersion);
  j["bet_size_shape"] = detail::round12(c.bet_size_shape);
  j["nu"] = detail::round12(c.nu);
  j["delta"] = detail::round12(c.delta);
  j["exponent_dispersion"] = detail::round12(c.exponent_dispersion);
  j["eta_mean"] = detail::round12(c.eta_mean);
  j["eta_dispersion"] = detail::round12(c.eta_dispersion);
  j["xi_mean"] = detail::round12(c.xi_mean);
  j["xi_dispersion"] = detail::round12(c.xi_dispersion);
  j["spread_const_c"] = detail::round12(c.spread_const_c);
  j["y_spd"] = detail::round12(c.y_true.y_spd);
  j["y_imp"] = detail::round12(c.y_true.y_imp);
  j["price_dispersion"] = detail::round12(c.price_dispersion);
  j["sigma0"] = detail::round12(c.effective_sigma0());
  j["sigma0_decades"] = detail::round12(c.sigma0_decades);
  j["vol_noise"] = detail::round12(c.vol_noise);
  j["price_lo"] = detail::round12(c.price_lo);
  j["price_decades"] = detail::round12(c.price_decades);
  j["dollar_size"] = detail::round12(c.dollar_size);
  j["start_date"] = c.start_date;
  j["anchor_cost"] = c.anchor_cost;
  nlohmann::ordered_json stocks = nlohmann::ordered_json::array();
  for (const StockTruth& t : truth.stocks) {
    nlohmann::ordered_json s;
    s["symbol"] = t.symbol;
    s["sector"] = std::string(to_string(t.sector));
    s["cap_bucket"] = std::string(to_string(t.cap));
    s["sigma0"] = detail::round12(t.sigma0);
    s["price"] = detail::round12(t.price);
    s["nu"] = detail::round12(t.nu);
    s["delta"] = detail::round12(t.delta);
    stocks.push_back(std::move(s));
  }
  j["stocks"] = std::move(stocks);
  return j.dump(2) + "\n";
}

}  // namespace tinv
