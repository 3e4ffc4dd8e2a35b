#include "tinv/check.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tinv/errors.hpp"
#include "tinv/stats.hpp"

namespace tinv {
namespace {

namespace fs = std::filesystem;

// Rounding to 12 significant digits bounds how well identities can hold
// on re-read values.
constexpr double kTextTolerance = 1e-9;

struct Table {
  std::map<std::string, std::size_t> columns;
  std::vector<std::vector<std::string>> rows;

  double num(std::size_t row, const std::string& col) const {
    const auto it = columns.find(col);
    if (it == columns.end()) throw Error(ErrorCode::MissingHeader, "column " + col);
    const std::string& s = rows[row].at(it->second);
    double v = std::nan("");
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  }
  const std::string& str(std::size_t row, const std::string& col) const {
    return rows[row].at(columns.at(col));
  }
};

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableFile, path.string());
  Table t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
  };
  if (!std::getline(in, line)) throw Error(ErrorCode::MissingHeader, path.string());
  const auto header = split(line);
  for (std::size_t i = 0; i < header.size(); ++i) t.columns[header[i]] = i;
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::vector<CheckOutcome> check_output_dir(const fs::path& dir, const CheckOptions& options) {
  const Table records = read_table(dir / "records.csv");
  const Table stats = read_table(dir / "invariant_stats.csv");
  const Table cond = read_table(dir / "conditional_means.csv");
  std::ifstream summary_in(dir / "summary.json");
  if (!summary_in) throw Error(ErrorCode::UnreadableFile, (dir / "summary.json").string());
  const nlohmann::json summary = nlohmann::json::parse(summary_in, nullptr, false);
  if (summary.is_discarded()) throw Error(ErrorCode::UnreadableFile, "summary.json is not valid JSON");

  std::vector<CheckOutcome> out;

  {
    CheckOutcome c{"harmonic_decomposition", true, ""};
    for (std::size_t i = 0; i < records.rows.size(); ++i) {
      const double lhs = 1.0 / records.num(i, "script_I");
      const double rhs = 1.0 / records.num(i, "script_I_spd") + 1.0 / records.num(i, "script_I_imp");
      if (!close_rel(lhs, rhs, kTextTolerance)) {
        c.pass = false;
        c.detail = "records.csv row " + std::to_string(i + 2) + ": 1/I=" + fmt(lhs) + " vs " + fmt(rhs);
        break;
      }
    }
    if (c.pass) c.detail = std::to_string(records.rows.size()) + " records";
    out.push_back(c);
  }

  {
    CheckOutcome c{"invariant_ratio", true, ""};
    for (std::size_t i = 0; i < records.rows.size(); ++i) {
      const double cost = records.num(i, "C");
      const bool ok = close_rel(cost, records.num(i, "C_spd") + records.num(i, "C_imp"), kTextTolerance) &&
                      close_rel(records.num(i, "script_I"), records.num(i, "I") / cost, kTextTolerance);
      if (!ok) {
        c.pass = false;
        c.detail = "records.csv row " + std::to_string(i + 2);
        break;
      }
    }
    out.push_back(c);
  }

  const auto& scaling = summary["scaling"];
  const bool has_fit = scaling.is_object() && scaling["slope"].is_number();
  const double slope = has_fit ? scaling["slope"].get<double>() : std::nan("");
  out.push_back({"pooled_slope_in_band", has_fit && slope >= options.slope_lo && slope <= options.slope_hi,
                 "slope " + fmt(slope) + " band [" + fmt(options.slope_lo) + ", " + fmt(options.slope_hi) + "]"});

  {
    std::vector<ConditionalMean> pooled;
    for (std::size_t i = 0; i < cond.rows.size(); ++i) {
      if (cond.str(i, "grouping") != "all") continue;
      ConditionalMean m;
      m.center = cond.num(i, "n_center");
      m.mean = cond.num(i, "mean_R");
      pooled.push_back(m);
    }
    CheckOutcome c{"slope_matches_table", false, ""};
    try {
      const double refit = loglog_ols(pooled).slope;
      c.pass = has_fit && std::abs(refit - slope) <= 1e-8;
      c.detail = "refit " + fmt(refit) + " vs summary " + fmt(slope);
    } catch (const Error& e) {
      c.detail = e.what();
    }
    out.push_back(c);
  }

  std::map<std::string, std::size_t> stat_row;
  for (std::size_t i = 0; i < stats.rows.size(); ++i) stat_row[stats.str(i, "invariant")] = i;

  {
    CheckOutcome c{"cv_ordering", false, "invariant_stats.csv lacks I or script_I"};
    if (stat_row.contains("I") && stat_row.contains("script_I")) {
      const double cv_ko = stats.num(stat_row["I"], "cv");
      const double cv_inv = stats.num(stat_row["script_I"], "cv");
      c.pass = cv_inv < cv_ko;
      c.detail = "CV(script_I)=" + fmt(cv_inv) + " CV(I)=" + fmt(cv_ko);
    }
    out.push_back(c);
  }

  {
    CheckOutcome c{"stats_match_records", true, ""};
    for (const std::string name : {"I", "script_I", "script_I_spd", "script_I_imp"}) {
      if (!stat_row.contains(name)) continue;
      std::vector<double> values;
      for (std::size_t i = 0; i < records.rows.size(); ++i) values.push_back(records.num(i, name));
      try {
        const DispersionStats s = dispersion(values);
        const std::size_t r = stat_row[name];
        if (!close_rel(s.mean, stats.num(r, "mean"), 1e-8) || !close_rel(s.cv, stats.num(r, "cv"), 1e-8) ||
            !close_rel(s.cv_mad, stats.num(r, "cv_mad"), 1e-8)) {
          c.pass = false;
          c.detail = name + ": recomputed CV " + fmt(s.cv) + " vs table " + fmt(stats.num(r, "cv"));
          break;
        }
      } catch (const Error& e) {
        c.pass = false;
        c.detail = name + ": " + e.what();
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace tinv
