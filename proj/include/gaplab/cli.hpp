#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaplab::cli {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecondition = 3;

/// Runs the command line `args` (args[0] is the program name) writing
/// reports to `out` (or --out) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaplab::cli
