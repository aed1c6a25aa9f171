#pragma once

#include <string>
#include <vector>

#include "cli/run_config.hpp"

namespace jhit::cli {

/// Each command writes its files under config.out_dir and returns the paths written.
std::vector<std::string> cmd_solve(const RunConfig& config);
std::vector<std::string> cmd_mc(const RunConfig& config);
std::vector<std::string> cmd_convergence(const RunConfig& config);
std::vector<std::string> cmd_fichera(const RunConfig& config);
std::vector<std::string> cmd_crossval(const RunConfig& config);
std::vector<std::string> cmd_sweep(const RunConfig& config);

/// Error of each field against the reference at the probe points (max over probes).
struct ConvergenceResult {
    std::vector<int> ns;
    std::vector<double> error;       // probe mode
    std::vector<double> error_l1;    // norm mode
    std::vector<double> error_linf;  // norm mode
};

ConvergenceResult run_convergence(const RunConfig& config);

}  // namespace jhit::cli
