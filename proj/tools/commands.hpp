#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace podsum::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,   // verify found a failing check, or an unexpected error
    kUsage = 2,         // bad arguments or a malformed spec file
    kNotSummable = 3,
    kDominanceBug = 4,  // a certified lower bound exceeded a certified upper bound
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit hash of the spec file bytes, as 16 hex digits.
std::string spec_digest(std::string_view bytes);

/// n log-spaced points from a to b inclusive (a, b > 0, n >= 1).
std::vector<double> log_grid(double a, double b, std::size_t n);

} // namespace podsum::cli
