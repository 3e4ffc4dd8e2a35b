#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tinv/costs.hpp"
#include "tinv/model.hpp"

namespace tinv {

// Counter-based generator: the i-th draw is a pure function of
// (seed, stream, substream, i), so generation order never changes output.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1).
  double uniform() noexcept;
  // Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() noexcept;
  // exp(s Z - s^2/2): lognormal with unit mean.
  double unit_lognormal(double log_std) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct GeneratorConfig {
  std::size_t n_stocks = 300;
  std::size_t n_days = 200;
  std::uint64_t seed = 42;

  // Daily bet count: discrete lognormal with this mean and log-std. The
  // default log-std puts +-2 standard deviations across two decades.
  double mean_n = 5.0;
  double n_dispersion = 1.1512925464970229;  // ln(100) / 4

  // Log-std of the (stock-independent) lognormal bet-size shape.
  double bet_size_shape = 1.0;

  // sigma_d ~ N^nu and mean dollar bet size ~ N^delta.
  double nu = 0.25;
  double delta = 0.25;
  // Per-stock exponents are drawn as nu + s Z and delta + s Z.
  double exponent_dispersion = 0.05;
  bool strict_three_halves = false;

  // Narrow stock-independent laws for eta = V/V_d and xi = N/N_d.
  double eta_mean = 0.05;
  double eta_dispersion = 0.3;
  double xi_mean = 0.005;
  double xi_dispersion = 0.3;

  // S = c p sigma_d / sqrt(N_d)
  double spread_const_c = 0.3;
  CostCoefficients y_true{3.5, 1.5};

  // vwap_i = p (1 + price_dispersion * U[-1, 1])
  double price_dispersion = 0.0;

  // sigma_d = sigma0_stock * N^nu * unit lognormal(vol_noise). sigma0 <= 0
  // selects 0.01 / mean_n^nu. Per-stock sigma0 and price are log-uniform
  // over the given number of decades.
  double sigma0 = 0.0;
  double sigma0_decades = 0.5;
  double vol_noise = 0.3;
  double price_lo = 20.0;
  double price_decades = 1.0;
  // Mean dollar size of a bet at N = 1.
  double dollar_size = 2e5;

  std::string start_date = "2007-01-03";
  // Ties I to y_true: each day's eta is solved from
  // 1 = y_spd c sqrt(xi) + y_imp m sqrt(eta), so equal-price days satisfy
  // I = y_spd C0_spd + y_imp C0_imp and calibration recovers y_true.
  bool anchor_cost = false;

  double effective_sigma0() const noexcept;
};

// Throws InvalidConfig.
void validate(const GeneratorConfig& config);

struct StockTruth {
  std::string symbol;
  Sector sector = Sector::BasicMaterials;
  CapBucket cap = CapBucket::Large;
  double sigma0 = 0.0;
  double price = 0.0;
  double nu = 0.0;
  double delta = 0.0;
};

struct GroundTruth {
  GeneratorConfig config;
  std::vector<StockTruth> stocks;
};

struct SyntheticPanel {
  std::vector<Metaorder> metaorders;  // ordered by (stock, day)
  std::vector<DailyBar> bars;         // ordered by (stock, day)
  std::vector<StockMeta> meta;
  GroundTruth truth;
};

// OpenMP-parallel over (stock, day); identical to generate_panel_serial.
SyntheticPanel generate_panel(const GeneratorConfig& config);
SyntheticPanel generate_panel_serial(const GeneratorConfig& config);

std::string generator_symbol(std::size_t stock_index, std::size_t n_stocks);
// Consecutive Monday-Friday dates starting at (or after) `start`.
std::vector<std::string> business_days(std::string_view start, std::size_t count);

// Resets I to (y_spd c0_spd + y_imp c0_imp) times a unit-mean lognormal of
// log-std noise_level, keyed by record index, and re-applies the coefficients.
std::vector<AggregateRecord> inject_cost_noise(std::span<const AggregateRecord> records,
                                               const CostCoefficients& y_true, double noise_level,
                                               std::uint64_t seed);

std::string ground_truth_json(const GroundTruth& truth);

}  // namespace tinv
