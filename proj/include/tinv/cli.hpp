#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tinv {

// Exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFatalInput = 2,
  kExitInsufficientData = 3,
  kExitCheckFailed = 4,
};

// `args` excludes the program name: {"simulate", "--stocks", "10", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tinv
