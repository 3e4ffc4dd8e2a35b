#include "tinv/report.hpp"

#include <cmath>
#include <fstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "json_util.hpp"
#include "tinv/ingest.hpp"
#include "tinv/summation.hpp"

namespace tinv {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using detail::json_number;

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::string_view header) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorCode::UnwritableDir, path.string());
    out_ << header << '\n';
  }
  ~CsvWriter() = default;

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
  }

  void finish() {
    out_.flush();
    if (!out_) throw Error(ErrorCode::UnwritableDir, path_.string());
  }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }

  fs::path path_;
  std::ofstream out_;
};

void write_fits(const fs::path& path, const std::vector<GroupFit>& fits) {
  CsvWriter csv(path, "group,slope,intercept,r_squared,n_points,mean_I");
  for (const GroupFit& f : fits)
    csv.row(f.group, f.fit.slope, f.fit.intercept, f.fit.r_squared, f.fit.n_points,
            std::pow(10.0, f.fit.intercept));
  csv.finish();
}

ordered_json fit_json(const std::optional<RegressionResult>& fit) {
  if (!fit) return nullptr;
  ordered_json j;
  j["slope"] = json_number(fit->slope);
  j["intercept"] = json_number(fit->intercept);
  j["r_squared"] = json_number(fit->r_squared);
  j["n_points"] = fit->n_points;
  j["mean_I"] = json_number(std::pow(10.0, fit->intercept));
  return j;
}

ordered_json summary_json(const AnalysisResult& res, const RunInfo& info) {
  ordered_json j;
  ordered_json config;
  config["metaorders"] = info.metaorders_path;
  config["daily"] = info.daily_path;
  config["meta"] = info.meta_path;
  config["vol"] = std::string(to_string(res.options.vol));
  config["price_proxy"] = res.options.price == PriceProxy::VwapWeighted ? "vwap" : "prev_close";
  config["group_by"] = std::string(to_string(res.options.group_by));
  config["calibrate"] = res.options.calibrate;
  config["calibrate_intercept"] = res.options.calibrate_intercept;
  config["min_bucket_count"] = res.options.min_bucket_count;
  j["config"] = std::move(config);
  j["seed"] = info.seed ? ordered_json(*info.seed) : ordered_json(nullptr);

  std::size_t n_stocks = 0;
  {
    std::string last;
    for (const AggregateRecord& r : res.records)
      if (r.symbol != last) {
        ++n_stocks;
        last = r.symbol;
      }
  }
  ordered_json counts;
  counts["metaorders"] = res.n_metaorders;
  counts["bars"] = res.n_bars;
  counts["panels"] = res.n_panels;
  counts["zero_volatility"] = res.n_zero_volatility;
  counts["degenerate_cost"] = res.n_degenerate_cost;
  counts["records"] = res.records.size();
  counts["stocks"] = n_stocks;
  counts["diagnostics"] = res.diagnostics.size();
  j["counts"] = std::move(counts);

  ordered_json coef;
  coef["y_spd"] = json_number(res.coefficients.y_spd);
  coef["y_imp"] = json_number(res.coefficients.y_imp);
  coef["source"] = res.coefficient_source;
  j["coefficients"] = std::move(coef);

  if (res.calibration) {
    ordered_json cal;
    cal["y_spd"] = json_number(res.calibration->y_spd);
    cal["y_imp"] = json_number(res.calibration->y_imp);
    cal["intercept"] = json_number(res.calibration->intercept);
    cal["r_squared"] = json_number(res.calibration->r_squared);
    cal["n_points"] = res.calibration->n_points;
    cal["has_negative"] = res.calibration->has_negative;
    j["calibration"] = std::move(cal);
  } else {
    j["calibration"] = nullptr;
  }

  j["scaling"] = fit_json(res.pooled_fit);
  j["bet_risk_scaling"] = fit_json(res.bet_risk_fit);

  ordered_json inv = ordered_json::object();
  for (const InvariantStatRow& row : res.invariant_stats) {
    ordered_json s;
    s["mean"] = json_number(row.stats.mean);
    s["cv"] = json_number(row.stats.cv);
    s["cv_mad"] = json_number(row.stats.cv_mad);
    inv[row.name] = std::move(s);
  }
  j["invariants"] = std::move(inv);
  j["mean_spread_cost_share"] = json_number(res.mean_spread_share);
  j["median_spread_c"] = json_number(res.median_spread_c);
  j["vol_size_correlation"] = json_number(res.vol_size_correlation);

  ordered_json ex;
  const auto& rows = res.exponents.rows;
  ex["n_stocks"] = rows.size();
  if (!rows.empty()) {
    const double n = static_cast<double>(rows.size());
    std::vector<double> gamma, sum;
    for (const StockExponents& e : rows) {
      gamma.push_back(e.gamma);
      sum.push_back(e.nu + e.delta);
    }
    ex["mean_gamma"] = json_number(compensated_sum(gamma) / n);
    ex["mean_nu"] = json_number(compensated_sum(rows, [](const StockExponents& e) { return e.nu; }) / n);
    ex["mean_delta"] = json_number(compensated_sum(rows, [](const StockExponents& e) { return e.delta; }) / n);
    ex["gamma_vs_nu_plus_delta_corr"] = json_number(pearson(gamma, sum));
  }
  j["exponents"] = std::move(ex);

  j["notices"] = res.notices;
  return j;
}

}  // namespace

std::vector<std::string> emitted_files() {
  return {"conditional_means.csv", "fit_by_cap.csv",     "fit_by_sector.csv", "fit_by_year.csv",
          "fit_by_stock.csv",      "invariant_stats.csv", "exponents.csv",     "records.csv",
          "cost_ratios.csv",       "summary.json"};
}

void emit_tables(const AnalysisResult& res, const RunInfo& info, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "histograms", ec);
  if (ec) throw Error(ErrorCode::UnwritableDir, out_dir.string() + ": " + ec.message());

  {
    CsvWriter csv(out_dir / "conditional_means.csv", "grouping,group,n_lo,n_hi,n_center,count,mean_R,mean_I");
    for (const ConditionalRow& r : res.conditional_means)
      csv.row(r.grouping, r.group, r.risk.n_lo, r.risk.n_hi, r.risk.center, r.risk.count, r.risk.mean, r.mean_ko);
    csv.finish();
  }
  write_fits(out_dir / "fit_by_cap.csv", res.fit_by_cap);
  write_fits(out_dir / "fit_by_sector.csv", res.fit_by_sector);
  write_fits(out_dir / "fit_by_year.csv", res.fit_by_year);
  write_fits(out_dir / "fit_by_stock.csv", res.fit_by_stock);
  {
    CsvWriter csv(out_dir / "invariant_stats.csv", "invariant,n,mean,std_dev,mad,cv,cv_mad");
    for (const InvariantStatRow& r : res.invariant_stats)
      csv.row(r.name, r.n, r.stats.mean, r.stats.std_dev, r.stats.mad, r.stats.cv, r.stats.cv_mad);
    csv.finish();
  }
  {
    CsvWriter csv(out_dir / "exponents.csv", "symbol,gamma,nu,delta,n_buckets");
    for (const StockExponents& e : res.exponents.rows) csv.row(e.symbol, e.gamma, e.nu, e.delta, e.n_buckets);
    csv.finish();
  }
  {
    CsvWriter csv(out_dir / "records.csv",
                  "symbol,date,N,sigma_d,price_proxy,R,V,dollar_volume,c0_spd,c0_imp,I,C,C_spd,C_imp,"
                  "script_I,script_I_spd,script_I_imp,m,eta,xi,spread_c");
    for (const AggregateRecord& r : res.records)
      csv.row(r.symbol, r.date, r.n, r.sigma_d, r.price_proxy, r.risk, r.volume, r.dollar_volume, r.c0_spd,
              r.c0_imp, r.ko_invariant, r.cost, r.cost_spd, r.cost_imp, r.cost_invariant, r.spread_invariant,
              r.impact_invariant, r.m, r.eta, r.xi, r.spread_c);
    csv.finish();
  }
  {
    CsvWriter csv(out_dir / "cost_ratios.csv", "participation_lo,participation_hi,count,spread_share,impact_share");
    for (const CostRatioBucket& b : res.cost_ratios)
      csv.row(b.lo, b.hi, b.count, b.mean_spread_share, b.mean_impact_share);
    csv.finish();
  }
  for (const NamedHistogram& h : res.histograms) {
    CsvWriter csv(out_dir / "histograms" / (h.name + ".csv"), "bin_lo,bin_hi,count,density");
    for (const HistogramBin& b : h.bins) csv.row(b.lo, b.hi, b.count, b.density);
    csv.finish();
  }

  std::ofstream out(out_dir / "summary.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::UnwritableDir, (out_dir / "summary.json").string());
  out << summary_json(res, info).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::UnwritableDir, (out_dir / "summary.json").string());
}

}  // namespace tinv
