#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvlab {

/// Exit codes: 0 every requested check holds, 1 a check failed,
/// 2 usage or input error.
enum ExitStatus { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvlab
