#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "tinv/ingest.hpp"
#include "tinv/synthgen.hpp"

using namespace tinv;
using tinv::testing::rel_diff;

namespace {

template <class Fn>
auto parse(const std::string& text, Fn fn) {
  std::istringstream in(text);
  return fn(in);
}

Parsed<Metaorder> metaorders(const std::string& text) {
  return parse(text, [](std::istream& in) { return parse_metaorders(in); });
}
Parsed<DailyBar> daily(const std::string& text) {
  return parse(text, [](std::istream& in) { return parse_daily(in); });
}
Parsed<StockMeta> meta(const std::string& text) {
  return parse(text, [](std::istream& in) { return parse_meta(in); });
}

void expect_counts(const IngestReport& r, std::size_t read, std::size_t accepted) {
  EXPECT_EQ(r.rows_read, read);
  EXPECT_EQ(r.rows_accepted, accepted);
  EXPECT_EQ(r.rows_dropped, read - accepted);
  EXPECT_EQ(r.diagnostics.size(), read - accepted);
}

}  // namespace

TEST(Ingest, WellFormedMetaorders) {
  const auto p = metaorders(
      "date,symbol,side,shares,vwap\n"
      "2010-01-04,AAA,buy,100,10.5\n"
      "2010-01-04,AAA,sell,200,10.25\n"
      "2010-01-05,BBB,buy,5,99\n");
  expect_counts(p.report, 3, 3);
  ASSERT_EQ(p.rows.size(), 3u);
  EXPECT_EQ(p.rows[1].side, Side::Sell);
  EXPECT_EQ(p.rows[1].shares, 200);
  EXPECT_EQ(p.rows[2].symbol, "BBB");
}

TEST(Ingest, ShuffledColumns) {
  const auto a = metaorders("date,symbol,side,shares,vwap\n2010-01-04,AAA,buy,100,10.5\n");
  const auto b = metaorders("vwap,shares,side,symbol,date\n10.5,100,buy,AAA,2010-01-04\n");
  ASSERT_EQ(b.rows.size(), 1u);
  EXPECT_EQ(a.rows[0].symbol, b.rows[0].symbol);
  EXPECT_EQ(a.rows[0].date, b.rows[0].date);
  EXPECT_EQ(a.rows[0].shares, b.rows[0].shares);
  EXPECT_EQ(a.rows[0].vwap, b.rows[0].vwap);
}

TEST(Ingest, RowErrorsCarryLineNumbers) {
  const auto p = metaorders(
      "date,symbol,side,shares,vwap\n"
      "2010-01-04,AAA,buy,100,10.5\n"
      "2010-01-04,AAA,buy,0,10.5\n"
      "\n"
      "2010-01-04,AAA,hold,1,10.5\n"
      "2010-13-04,AAA,buy,1,10.5\n"
      "2010-01-04,AAA,buy,1,-3\n"
      "2010-01-04,AAA,buy,abc,3\n"
      "2010-01-04,AAA,buy,1\n");
  expect_counts(p.report, 7, 1);
  const auto& d = p.report.diagnostics;
  EXPECT_EQ(d[0].row, 3u);
  EXPECT_EQ(d[0].code, ErrorCode::NonPositiveVolume);
  EXPECT_EQ(d[1].row, 5u);
  EXPECT_EQ(d[1].code, ErrorCode::BadSide);
  EXPECT_EQ(d[2].code, ErrorCode::BadDate);
  EXPECT_EQ(d[3].code, ErrorCode::NonPositivePrice);
  EXPECT_EQ(d[4].code, ErrorCode::BadNumber);
  EXPECT_EQ(d[5].code, ErrorCode::MalformedRow);
}

TEST(Ingest, MissingHeaderIsFatal) {
  try {
    metaorders("date,symbol,side,shares\n2010-01-04,AAA,buy,1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingHeader);
  }
  EXPECT_THROW(daily(""), Error);
}

TEST(Ingest, UnreadableFile) {
  try {
    parse_metaorders("/nonexistent/metaorders.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnreadableFile);
  }
}

TEST(Ingest, Daily) {
  const auto p = daily(
      "date,symbol,open,high,low,close,market_volume,market_trades,avg_spread\n"
      "2010-01-04,AAA,100,110,90,105,1e6,1000,0.01\n"
      "2010-01-04,BBB,100,90,110,105,1e6,1000,0.01\n"
      "2010-01-04,CCC,100,110,90,105,1e6,0,0.01\n"
      "2010-01-04,DDD,100,110,90,105,1e6,1000,0\n"
      "2010-01-04,EEE,100,110,90,105,1e6,1.5,0.01\n");
  expect_counts(p.report, 5, 1);
  EXPECT_EQ(p.rows[0].market_trades, 1000);
  EXPECT_EQ(p.report.diagnostics[0].code, ErrorCode::OHLCViolation);
  EXPECT_EQ(p.report.diagnostics[1].code, ErrorCode::NonPositiveField);
  EXPECT_EQ(p.report.diagnostics[2].code, ErrorCode::NonPositiveField);
  EXPECT_EQ(p.report.diagnostics[3].code, ErrorCode::BadNumber);
}

TEST(Ingest, Meta) {
  const auto p = meta(
      "symbol,sector,cap_bucket\n"
      "AAA,energy,large\n"
      "BBB,crypto,mid\n"
      "CCC,financial,micro\n"
      "AAA,utilities,small\n");
  EXPECT_EQ(p.report.rows_read, 4u);
  EXPECT_EQ(p.report.rows_accepted, 1u);
  EXPECT_EQ(p.report.rows_dropped, 3u);
  ASSERT_EQ(p.rows.size(), 1u);
  EXPECT_EQ(p.rows[0].sector, Sector::Utilities);
  EXPECT_EQ(p.rows[0].cap, CapBucket::Small);
  EXPECT_EQ(p.report.diagnostics[0].code, ErrorCode::UnknownSector);
  EXPECT_EQ(p.report.diagnostics[1].code, ErrorCode::UnknownCap);
  EXPECT_EQ(p.report.diagnostics[2].code, ErrorCode::DuplicateSymbol);
  EXPECT_EQ(p.report.diagnostics[2].row, 2u);
}

TEST(Ingest, FormatNumber) {
  EXPECT_EQ(format_number(0.2), "0.2");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(1e6), "1000000");
  EXPECT_EQ(format_number(123456789012345.0), "1.23456789012e+14");
}

TEST(Ingest, RoundTripsAtTwelveDigits) {
  GeneratorConfig c;
  c.n_stocks = 20;
  c.n_days = 20;
  c.price_dispersion = 0.03;
  const SyntheticPanel panel = generate_panel(c);
  const auto dir = std::filesystem::temp_directory_path() / "tinv_ingest_roundtrip";
  std::filesystem::create_directories(dir);
  write_metaorders(dir / "m.csv", panel.metaorders);
  write_daily(dir / "d.csv", panel.bars);
  write_meta(dir / "s.csv", panel.meta);
  const auto m = parse_metaorders(dir / "m.csv");
  const auto d = parse_daily(dir / "d.csv");
  const auto s = parse_meta(dir / "s.csv");
  ASSERT_EQ(m.rows.size(), panel.metaorders.size());
  ASSERT_EQ(d.rows.size(), panel.bars.size());
  ASSERT_EQ(s.rows.size(), panel.meta.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    ASSERT_EQ(m.rows[i].symbol, panel.metaorders[i].symbol);
    ASSERT_EQ(m.rows[i].side, panel.metaorders[i].side);
    ASSERT_LE(rel_diff(m.rows[i].shares, panel.metaorders[i].shares), 5e-12);
    ASSERT_LE(rel_diff(m.rows[i].vwap, panel.metaorders[i].vwap), 5e-12);
  }
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const DailyBar &a = d.rows[i], &b = panel.bars[i];
    ASSERT_EQ(a.date, b.date);
    ASSERT_LE(rel_diff(a.open, b.open), 5e-12);
    ASSERT_LE(rel_diff(a.high, b.high), 5e-12);
    ASSERT_LE(rel_diff(a.low, b.low), 5e-12);
    ASSERT_LE(rel_diff(a.close, b.close), 5e-12);
    ASSERT_LE(rel_diff(a.market_volume, b.market_volume), 5e-12);
    ASSERT_EQ(a.market_trades, b.market_trades);
    ASSERT_LE(rel_diff(a.avg_spread, b.avg_spread), 5e-12);
  }
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    EXPECT_EQ(s.rows[i].sector, panel.meta[i].sector);
    EXPECT_EQ(s.rows[i].cap, panel.meta[i].cap);
  }
  std::filesystem::remove_all(dir);
}
