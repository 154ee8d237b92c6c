#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regpart::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kConfig = 2,
  kCache = 3,
  kPrecision = 4,
};

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regpart::cli
