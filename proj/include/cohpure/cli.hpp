#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohpure::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitOptimizer = 3;
inline constexpr int kExitInvariant = 4;

inline constexpr const char* kOutputSchemaVersion = "1.0";

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohpure::cli
