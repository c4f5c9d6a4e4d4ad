#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace permutab::cli {

enum ExitCode : int {
  kHolds = 0,
  kFails = 1,
  kUsage = 2,
  kInconclusive = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace permutab::cli
