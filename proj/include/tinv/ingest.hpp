#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "tinv/errors.hpp"
#include "tinv/model.hpp"

namespace tinv {

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_accepted = 0;
  std::size_t rows_dropped = 0;
  std::vector<Diagnostic> diagnostics;
};

template <class Row>
struct Parsed {
  std::vector<Row> rows;
  IngestReport report;
};

// Header-keyed CSV readers. Rows that fail validation are dropped with a
// diagnostic carrying their 1-based line number; missing required columns
// throw MissingHeader, an unreadable file throws UnreadableFile.
Parsed<Metaorder> parse_metaorders(const std::filesystem::path& path);
Parsed<DailyBar> parse_daily(const std::filesystem::path& path);
// Duplicate symbols: the last row wins and a DuplicateSymbol diagnostic is kept.
Parsed<StockMeta> parse_meta(const std::filesystem::path& path);

Parsed<Metaorder> parse_metaorders(std::istream& in);
Parsed<DailyBar> parse_daily(std::istream& in);
Parsed<StockMeta> parse_meta(std::istream& in);

// Floating values are written with 12 significant digits.
std::string format_number(double value);

void write_metaorders(const std::filesystem::path& path, std::span<const Metaorder> rows);
void write_daily(const std::filesystem::path& path, std::span<const DailyBar> rows);
void write_meta(const std::filesystem::path& path, std::span<const StockMeta> rows);

inline constexpr const char* kMetaorderHeader = "date,symbol,side,shares,vwap";
inline constexpr const char* kDailyHeader =
    "date,symbol,open,high,low,close,market_volume,market_trades,avg_spread";
inline constexpr const char* kMetaHeader = "symbol,sector,cap_bucket";

}  // namespace tinv
