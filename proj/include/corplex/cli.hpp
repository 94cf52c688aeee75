#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corplex::cli {

/// Exit statuses: every measure computed, fatal error, or partial result
/// (some measures unavailable, some input lines skipped).
enum ExitCode : int { ok = 0, fatal = 1, partial = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corplex::cli
