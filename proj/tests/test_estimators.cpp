#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tinv/estimators.hpp"
#include "tinv/invariance.hpp"

using namespace tinv;
using tinv::testing::bar;
using tinv::testing::bet;

// Reference values evaluated independently at 30 digits.
constexpr double kRsCaseA = 0.0978132984708580;  // O=100 H=110 L=95 C=105
constexpr double kRsCaseB = 0.0636153704405772;  // O=C=100 H=105 L=96

TEST(HighLow, Values) {
  EXPECT_EQ(vol_high_low(bar(100, 110, 90, 100)).sigma, 0.20);
  EXPECT_DOUBLE_EQ(vol_high_low(bar(50, 52, 48, 50)).sigma, 0.08);
  const VolEstimate flat = vol_high_low(bar(100, 100, 100, 100));
  EXPECT_EQ(flat.sigma, 0.0);
  EXPECT_TRUE(flat.zero_volatility);
}

TEST(RogersSatchell, Values) {
  EXPECT_NEAR(vol_rogers_satchell(bar(100, 110, 95, 105)).sigma, kRsCaseA, 1e-12);
  EXPECT_NEAR(vol_rogers_satchell(bar(100, 105, 96, 100)).sigma, kRsCaseB, 1e-12);
  const VolEstimate flat = vol_rogers_satchell(bar(100, 100, 100, 100));
  EXPECT_EQ(flat.sigma, 0.0);
  EXPECT_TRUE(flat.zero_volatility);
}

TEST(RogersSatchell, RadicandNonNegativeOnRandomBars) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double lo = 1.0 + 100.0 * u(rng);
    const double hi = lo * (1.0 + 0.5 * u(rng));
    const double open = lo + (hi - lo) * u(rng);
    const double close = lo + (hi - lo) * u(rng);
    ASSERT_GE(rogers_satchell_radicand(bar(open, hi, lo, close)), 0.0);
  }
}

TEST(Estimators, ScaleInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double lo = 10.0, hi = 10.0 * (1.0 + 0.3 * u(rng));
    const double o = lo + (hi - lo) * u(rng), c = lo + (hi - lo) * u(rng);
    const double k = std::exp(4.0 * (u(rng) - 0.5));
    const DailyBar a = bar(o, hi, lo, c), b = bar(k * o, k * hi, k * lo, k * c);
    EXPECT_NEAR(vol_high_low(a).sigma, vol_high_low(b).sigma, 1e-12);
    EXPECT_NEAR(vol_rogers_satchell(a).sigma, vol_rogers_satchell(b).sigma, 1e-9);
  }
}

TEST(MonthlyAvg, GroupsByCalendarMonth) {
  std::vector<DailyBar> bars{bar(100, 110, 90, 100, "AAA", "2010-01-04"),   // 0.2
                             bar(100, 105, 95, 100, "AAA", "2010-01-05"),   // 0.1
                             bar(100, 130, 100, 100, "AAA", "2010-02-01"),  // 0.3
                             bar(100, 130, 100, 100, "AAA", "2011-01-03")}; // other year
  const auto m = vol_monthly_avg(bars);
  EXPECT_NEAR(m.at("2010-01-04"), 0.15, 1e-15);
  EXPECT_NEAR(m.at("2010-01-05"), 0.15, 1e-15);
  EXPECT_NEAR(m.at("2010-02-01"), 0.3, 1e-15);
  EXPECT_NEAR(m.at("2011-01-03"), 0.3, 1e-15);
}

TEST(MonthlyAvg, Singleton) {
  std::vector<DailyBar> bars{bar(100, 110, 90, 100)};
  EXPECT_NEAR(vol_monthly_avg(bars).at("2010-01-04"), 0.2, 1e-15);
}

TEST(Risk, BetRisk) {
  EXPECT_DOUBLE_EQ(bet_risk(0.02, bet(1000, 50)), 1000.0);
  EXPECT_EQ(bet_risk(0.0, bet(1000, 50)), 0.0);
  EXPECT_DOUBLE_EQ(bet_risk(0.01, bet(200, 25)), 50.0);
}

TEST(Risk, DailyRisk) {
  const auto p = tinv::testing::panel(bar(100, 110, 90, 100), {bet(1000, 50), bet(200, 25)});
  EXPECT_DOUBLE_EQ(daily_risk(p, 0.02), 1000.0 + 100.0);
  const auto single = tinv::testing::panel(bar(100, 110, 90, 100), {bet(123, 4.5)});
  EXPECT_EQ(daily_risk(single, 0.03), bet_risk(0.03, single.bets[0]));
  const auto four = tinv::testing::panel(bar(100, 110, 90, 100),
                                         {bet(10, 10), bet(10, 10), bet(10, 10), bet(10, 10)});
  const double r = bet_risk(0.5, four.bets[0]);
  EXPECT_EQ(daily_risk(four, 0.5), 4 * r);
  EXPECT_EQ(kyle_obizhaeva_I(daily_risk(four, 0.5), 4), r / 2);
}

TEST(Risk, DailyRiskEqualsNTimesMeanBetRisk) {
  std::mt19937_64 rng(11);
  std::lognormal_distribution<double> ln(5.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<Metaorder> bets;
    const int n = 1 + t % 37;
    for (int i = 0; i < n; ++i) bets.push_back(bet(std::round(ln(rng)) + 1, 10 + ln(rng) / 100));
    const auto p = tinv::testing::panel(bar(100, 110, 90, 100), bets);
    long double exact = 0;
    for (const auto& b : bets) exact += static_cast<long double>(bet_risk(0.013, b));
    EXPECT_LE(tinv::testing::rel_diff(daily_risk(p, 0.013), static_cast<double>(exact)), 1e-15);
  }
}
