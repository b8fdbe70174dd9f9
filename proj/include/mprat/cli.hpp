#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mprat::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNonzero = 1,
    kUsage = 2,
    kUndefined = 3,
};

/// Runs one subcommand; `args` excludes the program name. The JSON report
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mprat::cli
