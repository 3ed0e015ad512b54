#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cesaro::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Accepts decimal strings and the exact token "1/2".
double parse_alpha(const std::string& text);

} // namespace cesaro::cli
