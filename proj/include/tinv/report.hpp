#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tinv/analysis.hpp"

namespace tinv {

// Provenance recorded in summary.json.
struct RunInfo {
  std::string metaorders_path;
  std::string daily_path;
  std::string meta_path;
  std::optional<std::uint64_t> seed;
};

// Writes conditional_means.csv, fit_by_{cap,sector,year,stock}.csv,
// invariant_stats.csv, exponents.csv, records.csv, cost_ratios.csv,
// histograms/*.csv and summary.json. Throws UnwritableDir.
void emit_tables(const AnalysisResult& result, const RunInfo& info,
                 const std::filesystem::path& out_dir);

// Files emit_tables always produces, relative to out_dir.
std::vector<std::string> emitted_files();

}  // namespace tinv
