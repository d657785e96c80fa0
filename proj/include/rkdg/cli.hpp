#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rkdg {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitPass = 0,
  kExitRateFailure = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

/// Runs `rkdg-lab` with the given arguments (program name excluded).
/// Reports go to `out`, diagnostics to `err`, files to --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rkdg
