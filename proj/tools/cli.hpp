#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uvest::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDominanceViolation = 1,
  kInputError = 2,
  kUnsupported = 3,
};

// Runs one command line (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uvest::cli
