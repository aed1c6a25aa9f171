#pragma once

#include <string>
#include <vector>

namespace jhit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNonConvergence = 2;

/// Parses `args` (without the program name), runs the subcommand and maps
/// failures to exit codes.
int run_cli(const std::vector<std::string>& args);

}  // namespace jhit::cli
