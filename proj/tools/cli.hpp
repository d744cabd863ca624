// Command-line front end. Kept as a library so the tests can drive it
// without spawning processes.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ndlid::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kNotConverged = 3,
  kInternalError = 4,
};

/// Runs the tool on argv[1..] (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndlid::cli
