#pragma once

#include <string>
#include <vector>

namespace wfis_cli {

/// Exit codes of the command line tool.
enum ExitCode : int { kSuccess = 0, kValidationFail = 1, kUsageError = 2 };

/// Runs the tool on `args` (program name excluded).
int run(const std::vector<std::string>& args);

}  // namespace wfis_cli
