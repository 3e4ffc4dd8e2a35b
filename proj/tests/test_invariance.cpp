#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tinv/aggregate.hpp"
#include "tinv/invariance.hpp"

using namespace tinv;
using tinv::testing::bar;
using tinv::testing::bet;
using tinv::testing::rel_diff;

TEST(Invariance, KyleObizhaevaI) {
  EXPECT_EQ(kyle_obizhaeva_I(8, 4), 1.0);
  EXPECT_EQ(kyle_obizhaeva_I(3.7, 1), 3.7);
  EXPECT_DOUBLE_EQ(kyle_obizhaeva_I(6330, 100), 6.33);
}

TEST(Invariance, RescaledInvariants) {
  const InvariantSet s = rescaled_invariants(6.5, {1, 2}, {3.5, 1.5});
  EXPECT_DOUBLE_EQ(s.total, 1.0);
  EXPECT_DOUBLE_EQ(s.spread, 6.5 / 3.5);
  EXPECT_DOUBLE_EQ(s.impact, 6.5 / 3.0);
  EXPECT_LE(rel_diff(1 / s.total, 1 / s.spread + 1 / s.impact), 1e-15);
  try {
    rescaled_invariants(6.5, {1, 2}, {3.5, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateCost);
  }
}

TEST(Invariance, MomentM) {
  const std::vector<double> eq{7, 7, 7, 7};
  EXPECT_EQ(moment_m(eq), 1.0);
  const std::vector<double> a{1, 4};
  EXPECT_NEAR(moment_m(a), 1.138419957660617, 1e-14);
  const std::vector<double> b{1, 1, 8};
  EXPECT_NEAR(moment_m(b), 1.348899182287407, 1e-14);
}

TEST(Invariance, MomentMAtLeastOne) {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> ln(0.0, 2.0);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> v(1 + t % 20);
    for (double& x : v) x = ln(rng);
    ASSERT_GE(moment_m(v), 1.0);
  }
}

TEST(Invariance, EtaXi) {
  auto p = tinv::testing::panel(bar(100, 110, 90, 100, "AAA", "2010-01-04", 2000, 1000), {bet(100, 10)});
  EXPECT_EQ(participation_eta(p), 0.05);
  p.bets[0].shares = 500;
  EXPECT_EQ(participation_eta(p), 0.25);
  p.bets[0].shares = 2000;
  EXPECT_EQ(participation_eta(p), 1.0);
  auto five = tinv::testing::panel(bar(100, 110, 90, 100, "AAA", "2010-01-04", 1e6, 1000),
                                   {bet(1, 1), bet(1, 1), bet(1, 1), bet(1, 1), bet(1, 1)});
  EXPECT_EQ(trade_fraction_xi(five), 0.005);
  five.bar.market_trades = 5;
  EXPECT_EQ(trade_fraction_xi(five), 1.0);
}

TEST(Invariance, AnalyticForms) {
  EXPECT_EQ(analytic_impact_invariant(1, 1, 1), 1.0);
  EXPECT_NEAR(analytic_impact_invariant(1, 0.04, 1.5), 1.0 / 0.3, 1e-14);
  EXPECT_EQ(analytic_cost_invariant(1, 1, 0.3, 0.7, {0, 1}), 1.0);
  EXPECT_NEAR(analytic_cost_invariant(1.2, 0.5, 0.04, 1, {1, 0}), 5.0, 1e-14);
}

TEST(Invariance, SpreadConstant) {
  const DailyBar b = bar(100, 110, 90, 100, "AAA", "2010-01-04", 1e6, 10000, 0.02);
  EXPECT_DOUBLE_EQ(spread_constant_c(b, 0.02, 100), 1.0);
  DailyBar b2 = b;
  b2.avg_spread = 0.04;
  EXPECT_DOUBLE_EQ(spread_constant_c(b2, 0.02, 200), 1.0);
  const double c = 0.3, p = 37.5, s = 0.017;
  b2.avg_spread = c * p * s / std::sqrt(10000.0);
  EXPECT_NEAR(spread_constant_c(b2, s, p), 0.3, 1e-15);
  EXPECT_THROW(spread_constant_c(b, 0.0, 100), Error);
}

namespace {

// Random panel with all bets at one price and S = c p sigma / sqrt(N_d).
StockDayPanel equal_price_panel(std::mt19937_64& rng, double c, double price_dispersion = 0.0) {
  std::lognormal_distribution<double> size(6.0, 1.2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 40);
  const double p = 10 + 90 * (u(rng) + 1), sigma = 0.005 + 0.02 * (u(rng) + 1);
  const int n = count(rng);
  std::vector<Metaorder> bets;
  double total = 0;
  for (int i = 0; i < n; ++i) {
    bets.push_back(bet(std::round(size(rng)) + 1, p * (1 + price_dispersion * u(rng))));
    total += bets.back().shares;
  }
  const double vd = total / (0.01 + 0.2 * (u(rng) + 1));
  const std::int64_t nd = n * 100 + static_cast<std::int64_t>(1000 * (u(rng) + 1));
  DailyBar b = bar(p, p * (1 + sigma), p, p, "AAA", "2010-01-04", vd, nd, c * p * sigma / std::sqrt(double(nd)));
  return tinv::testing::panel(b, bets);
}

}  // namespace

TEST(Invariance, HarmonicDecomposition) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 2000; ++t) {
    const StockDayPanel p = equal_price_panel(rng, 0.3, 0.1);
    AggregateRecord r = aggregate_panel(p, (p.bar.high - p.bar.low) / p.bar.open, PriceProxy::VwapWeighted);
    apply_coefficients(r, {3.5, 1.5});
    ASSERT_LE(rel_diff(1 / r.cost_invariant, 1 / r.spread_invariant + 1 / r.impact_invariant), 1e-12);
  }
}

TEST(Invariance, EqualPriceIdentities) {
  std::mt19937_64 rng(22);
  const CostCoefficients y{3.5, 1.5};
  for (int t = 0; t < 2000; ++t) {
    const StockDayPanel p = equal_price_panel(rng, 0.3);
    const double sigma = (p.bar.high - p.bar.low) / p.bar.open;
    AggregateRecord r = aggregate_panel(p, sigma, PriceProxy::VwapWeighted);
    apply_coefficients(r, y);
    ASSERT_LE(rel_diff(r.impact_invariant, analytic_impact_invariant(r.m, r.eta, y.y_imp)), 1e-12);
    ASSERT_LE(rel_diff(r.cost_invariant, analytic_cost_invariant(r.m, r.eta, r.xi, 0.3, y)), 1e-12);
    ASSERT_LE(rel_diff(r.spread_c, 0.3), 1e-12);
  }
}

TEST(Invariance, EqualPriceGapShrinksWithDispersion) {
  const CostCoefficients y{3.5, 1.5};
  double previous = INFINITY;
  for (double disp : {0.4, 0.2, 0.1, 0.05, 0.01, 0.0}) {
    std::mt19937_64 rng(23);
    double worst = 0;
    for (int t = 0; t < 300; ++t) {
      const StockDayPanel p = equal_price_panel(rng, 0.3, disp);
      const double sigma = (p.bar.high - p.bar.low) / p.bar.open;
      AggregateRecord r = aggregate_panel(p, sigma, PriceProxy::VwapWeighted);
      apply_coefficients(r, y);
      worst = std::max(worst, rel_diff(r.impact_invariant, analytic_impact_invariant(r.m, r.eta, y.y_imp)));
    }
    EXPECT_LT(worst, previous) << "dispersion " << disp;
    previous = worst;
  }
  EXPECT_LE(previous, 1e-12);
}

TEST(Invariance, Homogeneity) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 500; ++t) {
    const StockDayPanel p = equal_price_panel(rng, 0.3, 0.2);
    StockDayPanel q = p;
    const double k = 7.25;
    for (auto& b : q.bets) b.vwap *= k;
    q.bar.open *= k;
    q.bar.high *= k;
    q.bar.low *= k;
    q.bar.close *= k;
    q.bar.avg_spread *= k;
    const double sp = (p.bar.high - p.bar.low) / p.bar.open;
    const double sq = (q.bar.high - q.bar.low) / q.bar.open;
    AggregateRecord a = aggregate_panel(p, sp, PriceProxy::VwapWeighted);
    AggregateRecord b = aggregate_panel(q, sq, PriceProxy::VwapWeighted);
    apply_coefficients(a, {3.5, 1.5});
    apply_coefficients(b, {3.5, 1.5});
    EXPECT_LE(rel_diff(b.ko_invariant, k * a.ko_invariant), 1e-12);
    EXPECT_LE(rel_diff(b.cost, k * a.cost), 1e-12);
    EXPECT_LE(rel_diff(b.cost_invariant, a.cost_invariant), 1e-12);
    EXPECT_LE(rel_diff(b.spread_invariant, a.spread_invariant), 1e-12);
    EXPECT_LE(rel_diff(b.impact_invariant, a.impact_invariant), 1e-12);
    EXPECT_EQ(b.m, a.m);
    EXPECT_EQ(b.eta, a.eta);
    EXPECT_EQ(b.xi, a.xi);
    EXPECT_LE(rel_diff(b.spread_c, a.spread_c), 1e-12);
  }
}
