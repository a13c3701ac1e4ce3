#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfdrkit::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       ///< bad flags, malformed input, invalid parameters
  kEstimation = 3,  ///< the estimator could not produce a result
};

/// Runs `lfdrkit <args...>` with the given streams. args excludes the program
/// name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfdrkit::cli
