#include <gtest/gtest.h>
#include <omp.h>

#include <cstdio>

#include "tinv/aggregate.hpp"
#include "tinv/estimators.hpp"
#include "tinv/stats.hpp"
#include "tinv/synthgen.hpp"

using namespace tinv;

namespace {

// Bit-exact text form of every field.
std::string hex(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a,", x);
  return buf;
}

std::string dump(const AggregateRecord& r) {
  std::string s = r.symbol + "," + r.date + "," + std::to_string(r.n) + ",";
  for (double x : {r.sigma_d, r.price_proxy, r.risk, r.volume, r.dollar_volume, r.c0_spd, r.c0_imp,
                   r.ko_invariant, r.cost, r.cost_spd, r.cost_imp, r.cost_invariant, r.spread_invariant,
                   r.impact_invariant, r.m, r.eta, r.xi, r.spread_c})
    s += hex(x);
  return s;
}

std::string dump(const SyntheticPanel& p) {
  std::string s;
  for (const auto& b : p.metaorders) s += b.symbol + b.date + (b.side == Side::Buy ? "b" : "s") + hex(b.shares) + hex(b.vwap) + "\n";
  for (const auto& b : p.bars)
    s += b.symbol + b.date + hex(b.open) + hex(b.high) + hex(b.low) + hex(b.close) + hex(b.market_volume) +
         std::to_string(b.market_trades) + hex(b.avg_spread) + "\n";
  s += ground_truth_json(p.truth);
  return s;
}

class ThreadCount : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

GeneratorConfig config() {
  GeneratorConfig c;
  c.n_stocks = 50;
  c.n_days = 80;
  c.price_dispersion = 0.02;
  return c;
}

}  // namespace

TEST_P(ThreadCount, GeneratorMatchesSerial) {
  EXPECT_EQ(dump(generate_panel(config())), dump(generate_panel_serial(config())));
}

TEST_P(ThreadCount, RecordsMatchSerial) {
  const SyntheticPanel p = generate_panel_serial(config());
  const JoinResult j = join_panels(p.metaorders, p.bars);
  std::vector<double> sig;
  for (const auto& panel : j.panels) sig.push_back(vol_high_low(panel.bar).sigma);
  for (PriceProxy proxy : {PriceProxy::VwapWeighted, PriceProxy::PreviousClose}) {
    const auto par = compute_records(j.panels, sig, proxy);
    const auto ser = compute_records_serial(j.panels, sig, proxy);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) ASSERT_EQ(dump(par[i]), dump(ser[i]));
  }
}

TEST_P(ThreadCount, ExponentsIndependentOfThreads) {
  const SyntheticPanel p = generate_panel_serial(config());
  const JoinResult j = join_panels(p.metaorders, p.bars);
  std::vector<double> sig;
  for (const auto& panel : j.panels) sig.push_back(vol_high_low(panel.bar).sigma);
  const auto recs = compute_records_serial(j.panels, sig, PriceProxy::VwapWeighted);
  const ExponentTable here = per_stock_exponents(recs);
  omp_set_num_threads(1);
  const ExponentTable one = per_stock_exponents(recs);
  ASSERT_EQ(here.rows.size(), one.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(here.rows[i].symbol, one.rows[i].symbol);
    EXPECT_EQ(hex(here.rows[i].gamma), hex(one.rows[i].gamma));
    EXPECT_EQ(hex(here.rows[i].nu), hex(one.rows[i].nu));
    EXPECT_EQ(hex(here.rows[i].delta), hex(one.rows[i].delta));
  }
}

TEST_P(ThreadCount, FirstErrorInOrderIsRethrown) {
  const SyntheticPanel p = generate_panel_serial(config());
  JoinResult j = join_panels(p.metaorders, p.bars);
  std::vector<double> sig(j.panels.size(), 0.01);
  j.panels[5].bets[0].shares = 2 * j.panels[5].bar.market_volume;
  j.panels[9].bets[0].shares = 3 * j.panels[9].bar.market_volume;
  std::string parallel_msg, serial_msg;
  try {
    compute_records(j.panels, sig, PriceProxy::VwapWeighted);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParticipationExceedsOne);
    parallel_msg = e.what();
  }
  try {
    compute_records_serial(j.panels, sig, PriceProxy::VwapWeighted);
  } catch (const Error& e) {
    serial_msg = e.what();
  }
  EXPECT_FALSE(serial_msg.empty());
  EXPECT_EQ(parallel_msg, serial_msg);
}

INSTANTIATE_TEST_SUITE_P(Threads, ThreadCount, ::testing::Values(1, 2, 4, 7));
