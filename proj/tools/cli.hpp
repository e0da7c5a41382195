#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace keycap::cli {

/// Exit statuses of the keycap tool.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,   // domain, numerical, or I/O error
    kUsage = 2,     // bad or conflicting command-line arguments
};

/// Runs the keycap command line. `args` excludes the program name.
/// Reports go to `out`; diagnostics are a single "error: ..." line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace keycap::cli
