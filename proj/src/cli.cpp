#include "tinv/cli.hpp"

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tinv/analysis.hpp"
#include "tinv/check.hpp"
#include "tinv/ingest.hpp"
#include "tinv/report.hpp"
#include "tinv/synthgen.hpp"

namespace tinv {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kMaxPrintedDiagnostics = 10;

struct ComputeFlags {
  std::string metaorders, daily, meta, out;
  std::string vol = "highlow";
  std::string price = "vwap";
  std::string group_by = "none";
  double y_spd = 0.0, y_imp = 0.0;
  bool calibrate = false;
  bool calibrate_intercept = false;
  std::size_t min_bucket_count = kDefaultMinBucketCount;
  int hist_bins = 10;
  int threads = 0;
  CLI::Option* y_spd_opt = nullptr;
};

struct SimulateFlags {
  GeneratorConfig config;
  std::string out;
  bool measured_exponents = false;
  int threads = 0;
  CLI::Option* nu_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
};

struct CheckFlags {
  std::string in;
  CheckOptions options;
};

void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

void print_report(std::ostream& err, std::string_view what, const IngestReport& r) {
  err << what << ": read " << r.rows_read << ", accepted " << r.rows_accepted << ", dropped "
      << r.rows_dropped << '\n';
  for (std::size_t i = 0; i < r.diagnostics.size() && i < kMaxPrintedDiagnostics; ++i) {
    const Diagnostic& d = r.diagnostics[i];
    err << "  line " << d.row << ": " << to_string(d.code) << ": " << d.message << '\n';
  }
  if (r.diagnostics.size() > kMaxPrintedDiagnostics)
    err << "  ... " << r.diagnostics.size() - kMaxPrintedDiagnostics << " more\n";
}

std::optional<std::uint64_t> sibling_seed(const fs::path& metaorders) {
  const fs::path truth = metaorders.parent_path() / "ground_truth.json";
  std::ifstream in(truth);
  if (!in) return std::nullopt;
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("seed") || !j["seed"].is_number_unsigned()) return std::nullopt;
  return j["seed"].get<std::uint64_t>();
}

int run_compute(const ComputeFlags& f, std::ostream& out, std::ostream& err) {
  AnalysisOptions opt;
  opt.vol = *parse_vol_kind(f.vol);
  opt.price = f.price == "prev_close" ? PriceProxy::PreviousClose : PriceProxy::VwapWeighted;
  opt.group_by = *parse_group_by(f.group_by);
  opt.calibrate = f.calibrate;
  opt.calibrate_intercept = f.calibrate_intercept;
  opt.min_bucket_count = f.min_bucket_count;
  opt.histogram_bins_per_decade = f.hist_bins;
  if (f.y_spd_opt->count() > 0) {
    const CostCoefficients y{f.y_spd, f.y_imp};
    try {
      validate(y);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    opt.coefficients = y;
  }
  if ((opt.group_by == GroupBy::Sector || opt.group_by == GroupBy::Cap) && f.meta.empty()) {
    err << "error: --group-by " << f.group_by << " requires --meta\n";
    return kExitUsage;
  }
  set_threads(f.threads);

  Parsed<Metaorder> bets;
  Parsed<DailyBar> bars;
  Parsed<StockMeta> meta;
  try {
    bets = parse_metaorders(f.metaorders);
    bars = parse_daily(f.daily);
    if (!f.meta.empty()) meta = parse_meta(f.meta);
  } catch (const Error& e) {
    err << "fatal: " << e.what() << '\n';
    return kExitFatalInput;
  }
  print_report(err, "metaorders", bets.report);
  print_report(err, "daily", bars.report);
  if (!f.meta.empty()) print_report(err, "meta", meta.report);

  AnalysisResult result;
  try {
    result = run_analysis({bets.rows, bars.rows, meta.rows}, opt);
  } catch (const Error& e) {
    err << "fatal: " << e.what() << '\n';
    const bool data_shortage = e.code() == ErrorCode::InsufficientPoints || e.code() == ErrorCode::SingularDesign;
    return data_shortage ? kExitInsufficientData : kExitFatalInput;
  }
  for (const std::string& notice : result.notices) err << "notice: " << notice << '\n';

  const RunInfo info{f.metaorders, f.daily, f.meta, sibling_seed(f.metaorders)};
  try {
    emit_tables(result, info, f.out);
  } catch (const Error& e) {
    err << "fatal: " << e.what() << '\n';
    return kExitFatalInput;
  }

  if (!result.sufficient()) {
    err << "insufficient data: " << result.records.size() << " usable stock-day(s)\n";
    return kExitInsufficientData;
  }
  out << "records " << result.records.size() << "\n";
  out << "slope " << format_number(result.pooled_fit->slope) << " r2 "
      << format_number(result.pooled_fit->r_squared) << "\n";
  out << "y_spd " << format_number(result.coefficients.y_spd) << " y_imp "
      << format_number(result.coefficients.y_imp) << " (" << result.coefficient_source << ")\n";
  return kExitOk;
}

int run_simulate(SimulateFlags f, std::ostream& out, std::ostream& err) {
  if (f.measured_exponents) {
    if (f.nu_opt->count() == 0) f.config.nu = 0.25;
    if (f.delta_opt->count() == 0) f.config.delta = 0.20;
  }
  set_threads(f.threads);
  SyntheticPanel panel;
  try {
    panel = generate_panel(f.config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::error_code ec;
    fs::create_directories(f.out, ec);
    if (ec) throw Error(ErrorCode::UnwritableDir, f.out + ": " + ec.message());
    const fs::path dir = f.out;
    write_metaorders(dir / "metaorders.csv", panel.metaorders);
    write_daily(dir / "daily.csv", panel.bars);
    write_meta(dir / "meta.csv", panel.meta);
    std::ofstream truth(dir / "ground_truth.json", std::ios::binary | std::ios::trunc);
    truth << ground_truth_json(panel.truth);
    if (!truth) throw Error(ErrorCode::UnwritableDir, (dir / "ground_truth.json").string());
  } catch (const Error& e) {
    err << "fatal: " << e.what() << '\n';
    return kExitFatalInput;
  }
  out << "wrote " << panel.metaorders.size() << " metaorders, " << panel.bars.size()
      << " daily bars, " << panel.meta.size() << " stocks to " << f.out << '\n';
  return kExitOk;
}

// Replaces `--config PATH` by the file's entries, placed ahead of the
// command-line flags; options take their last value, so flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty() || (args.front() != "compute" && args.front() != "simulate")) return args;
  const std::string& sub = args.front();
  std::vector<std::string> rest, from_file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    for (const CLI::ConfigItem& item : CLI::ConfigTOML{}.from_file(path)) {
      if (item.name == "++" || item.name == "--") continue;  // section markers
      if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub))
        throw CLI::ConfigError::Extras(item.fullname());
      if (item.inputs.empty()) {
        from_file.push_back("--" + item.name);
        continue;
      }
      for (const std::string& value : item.inputs) from_file.push_back("--" + item.name + "=" + value);
    }
  }
  std::vector<std::string> out{sub};
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int run_check(const CheckFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<CheckOutcome> outcomes;
  try {
    outcomes = check_output_dir(f.in, f.options);
  } catch (const Error& e) {
    err << "fatal: " << e.what() << '\n';
    return kExitFatalInput;
  }
  bool all = true;
  for (const CheckOutcome& c : outcomes) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    all = all && c.pass;
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trading-invariance analytics over metaorder panels", "tinv"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;  // consumed by expand_config; declared for --help

  ComputeFlags cf;
  auto* compute = app.add_subcommand("compute", "Run the analysis pipeline on metaorder and daily CSVs");
  compute->add_option("--config", config_path, "TOML/INI file of flag = value lines (flags on the command line win)");
  compute->add_option("--metaorders", cf.metaorders, "Metaorder CSV (date,symbol,side,shares,vwap)")->required();
  compute->add_option("--daily", cf.daily, "Daily bar CSV")->required();
  compute->add_option("--meta", cf.meta, "Stock metadata CSV (symbol,sector,cap_bucket)");
  compute->add_option("--out", cf.out, "Output directory")->required();
  compute->add_option("--vol", cf.vol, "Volatility estimator")
      ->check(CLI::IsMember({"highlow", "rs", "monthly"}))->capture_default_str();
  compute->add_option("--price", cf.price, "Price proxy")
      ->check(CLI::IsMember({"vwap", "prev_close"}))->capture_default_str();
  cf.y_spd_opt = compute->add_option("--yspd", cf.y_spd, "Spread cost coefficient");
  auto* y_imp_opt = compute->add_option("--yimp", cf.y_imp, "Impact cost coefficient");
  cf.y_spd_opt->needs(y_imp_opt);
  y_imp_opt->needs(cf.y_spd_opt);
  auto* calibrate = compute->add_flag("--calibrate", cf.calibrate, "Fit the cost coefficients by OLS");
  calibrate->excludes(cf.y_spd_opt)->excludes(y_imp_opt);
  compute->add_flag("--calibrate-intercept", cf.calibrate_intercept, "Add an intercept to the calibration (diagnostic)")
      ->needs(calibrate);
  compute->add_option("--group-by", cf.group_by, "Extra grouping of the N-conditioned table")
      ->check(CLI::IsMember({"none", "stock", "sector", "cap", "year"}))->capture_default_str();
  compute->add_option("--min-bucket-count", cf.min_bucket_count, "Minimum stock-days per N bucket")
      ->check(CLI::PositiveNumber)->capture_default_str();
  compute->add_option("--hist-bins", cf.hist_bins, "Histogram bins per decade")
      ->check(CLI::PositiveNumber)->capture_default_str();
  compute->add_option("--threads", cf.threads, "OpenMP threads (0: runtime default)")->capture_default_str();

  SimulateFlags sf;
  GeneratorConfig& g = sf.config;
  auto* simulate = app.add_subcommand("simulate", "Write a seeded synthetic panel");
  simulate->add_option("--config", config_path, "TOML/INI file of flag = value lines (flags on the command line win)");
  simulate->add_option("--stocks", g.n_stocks, "Number of stocks")->capture_default_str();
  simulate->add_option("--days", g.n_days, "Number of trading days")->capture_default_str();
  simulate->add_option("--seed", g.seed, "Seed")->capture_default_str();
  simulate->add_option("--out", sf.out, "Output directory")->required();
  simulate->add_flag("--strict-three-halves", g.strict_three_halves, "Require nu + delta = 0.5");
  simulate->add_flag("--paper-exponents", sf.measured_exponents, "nu = 0.25, delta = 0.20 unless given explicitly");
  simulate->add_option("--mean-n", g.mean_n, "Mean daily bet count")->capture_default_str();
  simulate->add_option("--n-dispersion", g.n_dispersion, "Log-std of the bet count")->capture_default_str();
  simulate->add_option("--bet-size-shape", g.bet_size_shape, "Log-std of bet sizes")->capture_default_str();
  sf.nu_opt = simulate->add_option("--nu", g.nu, "Volatility exponent")->capture_default_str();
  sf.delta_opt = simulate->add_option("--delta", g.delta, "Dollar bet size exponent")->capture_default_str();
  simulate->add_option("--exponent-dispersion", g.exponent_dispersion, "Std of per-stock exponents")->capture_default_str();
  simulate->add_option("--eta-mean", g.eta_mean, "Mean participation V/V_d")->capture_default_str();
  simulate->add_option("--eta-dispersion", g.eta_dispersion, "Log-std of eta")->capture_default_str();
  simulate->add_option("--xi-mean", g.xi_mean, "Mean trade fraction N/N_d")->capture_default_str();
  simulate->add_option("--xi-dispersion", g.xi_dispersion, "Log-std of xi")->capture_default_str();
  simulate->add_option("--spread-c", g.spread_const_c, "Spread constant c")->capture_default_str();
  simulate->add_option("--y-spd", g.y_true.y_spd, "True spread coefficient")->capture_default_str();
  simulate->add_option("--y-imp", g.y_true.y_imp, "True impact coefficient")->capture_default_str();
  simulate->add_option("--price-dispersion", g.price_dispersion, "Relative vwap spread within a day")->capture_default_str();
  simulate->add_option("--sigma0", g.sigma0, "Volatility scale (0: 0.01 / mean_n^nu)")->capture_default_str();
  simulate->add_option("--sigma0-decades", g.sigma0_decades, "Cross-stock spread of sigma0 in decades")->capture_default_str();
  simulate->add_option("--vol-noise", g.vol_noise, "Log-std of daily volatility noise")->capture_default_str();
  simulate->add_option("--price-lo", g.price_lo, "Lowest stock price")->capture_default_str();
  simulate->add_option("--price-decades", g.price_decades, "Cross-stock price spread in decades")->capture_default_str();
  simulate->add_option("--dollar-size", g.dollar_size, "Mean dollar bet size at N = 1")->capture_default_str();
  simulate->add_option("--start-date", g.start_date, "First trading day")->capture_default_str();
  simulate->add_flag("--anchor-cost", g.anchor_cost, "Solve each day's eta so that I tracks y_true times the cost");
  simulate->add_option("--threads", sf.threads, "OpenMP threads (0: runtime default)")->capture_default_str();

  CheckFlags kf;
  auto* check = app.add_subcommand("check", "Re-verify identities on a compute output directory");
  check->add_option("--in", kf.in, "Output directory of compute")->required();
  check->add_option("--slope-lo", kf.options.slope_lo, "Lower bound of the pooled slope band")->capture_default_str();
  check->add_option("--slope-hi", kf.options.slope_hi, "Upper bound of the pooled slope band")->capture_default_str();

  std::vector<std::string> storage{"tinv"};
  std::vector<char*> argv;
  try {
    const std::vector<std::string> expanded = expand_config(args);
    storage.insert(storage.end(), expanded.begin(), expanded.end());
    for (std::string& s : storage) argv.push_back(s.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (*compute) return run_compute(cf, out, err);
  if (*simulate) return run_simulate(sf, out, err);
  return run_check(kf, out, err);
}

}  // namespace tinv
