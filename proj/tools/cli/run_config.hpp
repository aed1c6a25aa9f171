#pragma once

// Resolved configuration of one CLI invocation: a flat key=value config file
// merged with command-line flags (flags win), converted and validated.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jhit/fd.hpp"
#include "jhit/mc.hpp"
#include "jhit/model.hpp"

namespace jhit::cli {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses `key=value` lines; `#` starts a comment, blank lines are ignored.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

/// Every key accepted in a config file, each also exposed as a `--key` flag
/// (underscores become dashes).
const std::vector<std::string>& known_keys();

struct Probe {
    double x;
    double z;
};

struct SweepCase {
    std::string name;
    ModelParams params;
    OmegaSpec omega;
};

struct RunConfig {
    ModelParams params;
    OmegaSpec omega;
    BoundarySpec boundary;
    std::string boundary_table;  // path, for f=tabulated
    int n = 100;
    fd::SchemeConfig scheme;
    mc::McConfig mc;
    std::string paths_profile = "desk";
    double x0 = 0.5;
    double z0 = 1.0;
    std::vector<Probe> probes{{0.5, 1.0}};
    std::vector<int> ns{100, 200, 400, 800};
    std::string reference = "fine";  // fine | mc
    int reference_n = 0;             // 0: twice the finest N
    std::string error_mode = "probe";  // probe | norm
    std::string field_path;
    std::vector<std::string> presets;
    std::vector<double> kappas;
    int samples = 101;
    std::string out_dir = ".";

    /// Converts and validates; throws ConfigError (or std::invalid_argument from
    /// the model layer) on any bad value.
    static RunConfig from_key_values(const KeyValues& kv);

    /// Canonical echo of every resolved setting.
    [[nodiscard]] KeyValues resolved() const;

    [[nodiscard]] int effective_reference_n() const;
    [[nodiscard]] fd::Problem problem() const;
    [[nodiscard]] std::vector<SweepCase> sweep_cases() const;
};

/// Named parameter profiles used by the sensitivity sweep.
std::vector<std::pair<std::string, ModelParams>> sensitivity_presets(const ModelParams& base);

}  // namespace jhit::cli
