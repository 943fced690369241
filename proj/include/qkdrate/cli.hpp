#pragma once

#include <ostream>
#include <span>
#include <string>

namespace qkdrate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputationError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs the command line `args` (args[0] is the program name). CSV goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qkdrate::cli
