#include "tinv/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>
#include <system_error>

namespace tinv {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Header-keyed reader: resolves required columns to positions and hands each
// data row to `on_row` as a field accessor.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::initializer_list<std::string_view> required) : in_(in) {
    std::string header;
    if (!std::getline(in_, header)) throw Error(ErrorCode::MissingHeader, "empty input");
    const auto names = split(header);
    width_ = names.size();
    std::map<std::string_view, std::size_t> pos;
    for (std::size_t i = 0; i < names.size(); ++i) pos.emplace(trim(names[i]), i);
    for (std::string_view col : required) {
      const auto it = pos.find(col);
      if (it == pos.end()) throw Error(ErrorCode::MissingHeader, "missing column '" + std::string(col) + "'");
      columns_.emplace(std::string(col), it->second);
    }
  }

  template <class Fn>
  void for_each_row(IngestReport& report, Fn&& on_row) {
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in_, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      ++report.rows_read;
      fields_ = split(line);
      if (fields_.size() != width_) {
        report.diagnostics.push_back({line_no, ErrorCode::MalformedRow,
                                      "expected " + std::to_string(width_) + " fields, got " +
                                          std::to_string(fields_.size())});
        ++report.rows_dropped;
        continue;
      }
      if (const auto err = on_row(line_no)) {
        report.diagnostics.push_back({line_no, err->first, err->second});
        ++report.rows_dropped;
      } else {
        ++report.rows_accepted;
      }
    }
  }

  std::string_view field(const char* name) const { return trim(fields_[columns_.at(name)]); }

 private:
  std::istream& in_;
  std::size_t width_ = 0;
  std::map<std::string, std::size_t> columns_;
  std::vector<std::string_view> fields_;
};

using RowError = std::optional<std::pair<ErrorCode, std::string>>;

RowError row_error(ErrorCode code, std::string message) { return std::make_pair(code, std::move(message)); }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableFile, path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::UnwritableDir, path.string());
  return out;
}

}  // namespace

Parsed<Metaorder> parse_metaorders(std::istream& in) {
  Parsed<Metaorder> out;
  CsvReader csv(in, {"date", "symbol", "side", "shares", "vwap"});
  csv.for_each_row(out.report, [&](std::size_t) -> RowError {
    Metaorder bet;
    bet.symbol = csv.field("symbol");
    if (bet.symbol.empty()) return row_error(ErrorCode::MalformedRow, "empty symbol");
    bet.date = csv.field("date");
    if (!is_iso_date(bet.date)) return row_error(ErrorCode::BadDate, "bad date '" + bet.date + "'");
    const auto side = parse_side(csv.field("side"));
    if (!side) return row_error(ErrorCode::BadSide, "side must be buy or sell");
    bet.side = *side;
    const auto shares = to_double(csv.field("shares"));
    if (!shares) return row_error(ErrorCode::BadNumber, "shares is not a number");
    if (!(*shares > 0.0)) return row_error(ErrorCode::NonPositiveVolume, "shares must be > 0");
    const auto vwap = to_double(csv.field("vwap"));
    if (!vwap) return row_error(ErrorCode::BadNumber, "vwap is not a number");
    if (!(*vwap > 0.0)) return row_error(ErrorCode::NonPositivePrice, "vwap must be > 0");
    bet.shares = *shares;
    bet.vwap = *vwap;
    out.rows.push_back(std::move(bet));
    return std::nullopt;
  });
  return out;
}

Parsed<DailyBar> parse_daily(std::istream& in) {
  Parsed<DailyBar> out;
  CsvReader csv(in, {"date", "symbol", "open", "high", "low", "close", "market_volume",
                     "market_trades", "avg_spread"});
  csv.for_each_row(out.report, [&](std::size_t) -> RowError {
    DailyBar bar;
    bar.symbol = csv.field("symbol");
    if (bar.symbol.empty()) return row_error(ErrorCode::MalformedRow, "empty symbol");
    bar.date = csv.field("date");
    if (!is_iso_date(bar.date)) return row_error(ErrorCode::BadDate, "bad date '" + bar.date + "'");
    for (auto [name, slot] : {std::pair{"open", &bar.open}, std::pair{"high", &bar.high},
                              std::pair{"low", &bar.low}, std::pair{"close", &bar.close},
                              std::pair{"market_volume", &bar.market_volume},
                              std::pair{"avg_spread", &bar.avg_spread}}) {
      const auto v = to_double(csv.field(name));
      if (!v) return row_error(ErrorCode::BadNumber, std::string(name) + " is not a number");
      *slot = *v;
    }
    const auto trades = to_int(csv.field("market_trades"));
    if (!trades) return row_error(ErrorCode::BadNumber, "market_trades is not an integer");
    bar.market_trades = *trades;
    if (const auto err = validate(bar)) {
      return row_error(*err, *err == ErrorCode::OHLCViolation
                                 ? "requires low <= open, close <= high"
                                 : "prices, volume, trades and spread must be > 0");
    }
    out.rows.push_back(std::move(bar));
    return std::nullopt;
  });
  return out;
}

Parsed<StockMeta> parse_meta(std::istream& in) {
  Parsed<StockMeta> out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> seen;  // symbol -> (row slot, line)
  CsvReader csv(in, {"symbol", "sector", "cap_bucket"});
  csv.for_each_row(out.report, [&](std::size_t line) -> RowError {
    StockMeta meta;
    meta.symbol = csv.field("symbol");
    if (meta.symbol.empty()) return row_error(ErrorCode::MalformedRow, "empty symbol");
    const auto sector = parse_sector(csv.field("sector"));
    if (!sector) return row_error(ErrorCode::UnknownSector, "unknown sector '" + std::string(csv.field("sector")) + "'");
    const auto cap = parse_cap(csv.field("cap_bucket"));
    if (!cap) return row_error(ErrorCode::UnknownCap, "unknown cap bucket '" + std::string(csv.field("cap_bucket")) + "'");
    meta.sector = *sector;
    meta.cap = *cap;
    if (const auto it = seen.find(meta.symbol); it != seen.end()) {
      // Last wins: the earlier row is superseded and counted as dropped.
      out.rows[it->second.first] = meta;
      out.report.diagnostics.push_back({it->second.second, ErrorCode::DuplicateSymbol,
                                        meta.symbol + " superseded by line " + std::to_string(line)});
      --out.report.rows_accepted;
      ++out.report.rows_dropped;
      it->second.second = line;
      return std::nullopt;
    }
    seen.emplace(meta.symbol, std::make_pair(out.rows.size(), line));
    out.rows.push_back(std::move(meta));
    return std::nullopt;
  });
  return out;
}

Parsed<Metaorder> parse_metaorders(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_metaorders(in);
}

Parsed<DailyBar> parse_daily(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_daily(in);
}

Parsed<StockMeta> parse_meta(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_meta(in);
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_metaorders(const std::filesystem::path& path, std::span<const Metaorder> rows) {
  auto out = open_output(path);
  out << kMetaorderHeader << '\n';
  for (const Metaorder& m : rows)
    out << m.date << ',' << m.symbol << ',' << to_string(m.side) << ',' << format_number(m.shares)
        << ',' << format_number(m.vwap) << '\n';
  if (!out) throw Error(ErrorCode::UnwritableDir, path.string());
}

void write_daily(const std::filesystem::path& path, std::span<const DailyBar> rows) {
  auto out = open_output(path);
  out << kDailyHeader << '\n';
  for (const DailyBar& b : rows)
    out << b.date << ',' << b.symbol << ',' << format_number(b.open) << ',' << format_number(b.high)
        << ',' << format_number(b.low) << ',' << format_number(b.close) << ','
        << format_number(b.market_volume) << ',' << b.market_trades << ','
        << format_number(b.avg_spread) << '\n';
  if (!out) throw Error(ErrorCode::UnwritableDir, path.string());
}

void write_meta(const std::filesystem::path& path, std::span<const StockMeta> rows) {
  auto out = open_output(path);
  out << kMetaHeader << '\n';
  for (const StockMeta& m : rows)
    out << m.symbol << ',' << to_string(m.sector) << ',' << to_string(m.cap) << '\n';
  if (!out) throw Error(ErrorCode::UnwritableDir, path.string());
}

}  // namespace tinv
