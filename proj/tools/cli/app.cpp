#include "cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <map>

#include "cli/commands.hpp"
#include "cli/log.hpp"
#include "cli/run_config.hpp"
#include "jhit/fd.hpp"

namespace jhit::cli {

namespace {

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

using Command = std::function<std::vector<std::string>(const RunConfig&)>;

const std::vector<std::pair<std::string, std::pair<std::string, Command>>>& commands() {
    static const std::vector<std::pair<std::string, std::pair<std::string, Command>>> table{
        {"solve", {"Finite-difference solve; writes field.csv and report.json", cmd_solve}},
        {"mc", {"Monte Carlo estimate of V(x0, z0); writes mc.csv", cmd_mc}},
        {"convergence", {"Convergence study over the N list; writes convergence.csv", cmd_convergence}},
        {"fichera", {"Fichera boundary classification; writes fichera.csv and fichera_summary.csv", cmd_fichera}},
        {"crossval", {"FD solve checked against Monte Carlo at the probes; writes crossval.csv", cmd_crossval}},
        {"sweep", {"Parameter or kappa sweep; writes per-case fields and sweep.csv", cmd_sweep}},
    };
    return table;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"jhit: boundary-hitting statistics of a Jacobi diffusion with decaying drift"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> flags;
    std::vector<std::string> probes;
    app.add_option("--config", config_path, "Flat key=value config file");
    app.add_option("--seed", flags["seed"], "Monte Carlo seed");
    app.add_option("--out", flags["out"], "Output directory");

    std::string chosen;
    for (const auto& [name, entry] : commands()) {
        auto* sub = app.add_subcommand(name, entry.first);
        sub->fallthrough();
        for (const auto& key : known_keys()) {
            if (key == "seed" || key == "out") continue;
            if (key == "probe") {
                sub->add_option("--probe", probes, "Probe point 'x,z' (repeatable, or 'x,z;x,z')");
                continue;
            }
            sub->add_option(flag_name(key), flags[key]);
        }
        sub->callback([&chosen, name = name] { chosen = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        KeyValues kv;
        if (!config_path.empty()) kv = read_config_file(config_path);
        for (const auto& [k, v] : flags)
            if (!v.empty()) kv[k] = v;
        if (!probes.empty()) {
            std::string joined;
            for (const auto& p : probes) joined += (joined.empty() ? "" : ";") + p;
            kv["probe"] = joined;
        }
        const auto config = RunConfig::from_key_values(kv);
        for (const auto& [name, entry] : commands())
            if (name == chosen) entry.second(config);
        return kExitOk;
    } catch (const fd::NonConvergenceError& e) {
        log::error(e.what());
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        log::error(e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        log::error(e.what());
        return kExitInvalid;
    }
}

}  // namespace jhit::cli
