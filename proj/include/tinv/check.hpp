#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tinv {

struct CheckOptions {
  double slope_lo = 1.45;
  double slope_hi = 1.55;
};

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Re-verifies internal identities of an emit_tables output directory.
// Throws UnreadableFile when required files are missing.
std::vector<CheckOutcome> check_output_dir(const std::filesystem::path& dir,
                                           const CheckOptions& options = {});

}  // namespace tinv
