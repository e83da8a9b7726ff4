#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace momap::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kComputationFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name), writing results to out
/// and diagnostics to err. Returns the exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momap::cli
