#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace colift {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kHolds = 0, kFails = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace colift
