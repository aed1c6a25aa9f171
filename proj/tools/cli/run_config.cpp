#include "cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/output.hpp"

namespace jhit::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        parts.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return parts;
}

template <class T>
T to_number(const std::string& key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("invalid value '" + std::string(text) + "' for " + key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw ConfigError("non-finite value for " + key);
    }
    return value;
}

class Reader {
public:
    explicit Reader(const KeyValues& kv) : kv_(kv) {}

    [[nodiscard]] bool has(const std::string& key) const { return kv_.count(key) != 0; }
    [[nodiscard]] std::string str(const std::string& key, std::string fallback) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? fallback : std::string(trim(it->second));
    }
    template <class T>
    [[nodiscard]] T num(const std::string& key, T fallback) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? fallback : to_number<T>(key, it->second);
    }

private:
    const KeyValues& kv_;
};

BoundarySpec read_boundary_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open boundary table " + path);
    std::vector<double> zs;
    std::vector<double> fs;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#' || t == "z,f") continue;
        const auto cols = split(t, ',');
        if (cols.size() != 2) throw ConfigError("boundary table rows must be 'z,f'");
        zs.push_back(to_number<double>("f_table", cols[0]));
        fs.push_back(to_number<double>("f_table", cols[1]));
    }
    return BoundarySpec::tabulated(std::move(zs), std::move(fs));
}

std::string join_numbers(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) s += ',';
        s += format_double(xs[k]);
    }
    return s;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
    KeyValues kv;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        kv[key] = std::string(trim(line.substr(eq + 1)));
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "delta", "c",       "R",         "eta",   "omega",       "kappa",         "f",     "f_table",
        "scheme", "N",      "w",         "tol",   "check_every", "max_iters",     "init",  "x0",
        "z0",    "paths",   "dt",        "t_max", "seed",        "workers",       "step_budget",
        "paths_profile",    "field",     "probe", "Ns",          "reference",     "reference_N",
        "mode",  "preset",  "kappas",    "samples", "out"};
    return keys;
}

RunConfig RunConfig::from_key_values(const KeyValues& kv) {
    const auto& keys = known_keys();
    for (const auto& [k, v] : kv)
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("unknown setting '" + k + "'");

    const Reader r(kv);
    RunConfig cfg;

    cfg.params.delta = r.num("delta", cfg.params.delta);
    cfg.params.c = r.num("c", cfg.params.c);
    cfg.params.R = r.num("R", cfg.params.R);
    cfg.params.eta = r.num("eta", cfg.params.eta);
    cfg.params.validate();

    const std::string omega = r.str("omega", "linear");
    const double kappa = r.num("kappa", 0.5);
    if (omega == "linear") cfg.omega = OmegaSpec::linear();
    else if (omega == "tanh") cfg.omega = OmegaSpec::tanh(kappa);
    else if (omega == "shifted-tanh") cfg.omega = OmegaSpec::shifted_tanh(kappa);
    else throw ConfigError("omega must be linear, tanh or shifted-tanh");
    cfg.omega.kappa = kappa;
    cfg.omega.validate();

    const std::string f = r.str("f", "f1");
    if (f == "f1") cfg.boundary = BoundarySpec::f1();
    else if (f == "f2") cfg.boundary = BoundarySpec::f2();
    else if (f == "f3") cfg.boundary = BoundarySpec::f3();
    else if (f == "tabulated") {
        cfg.boundary_table = r.str("f_table", "");
        if (cfg.boundary_table.empty()) throw ConfigError("f=tabulated requires f_table=<path>");
        cfg.boundary = read_boundary_table(cfg.boundary_table);
    } else throw ConfigError("f must be f1, f2, f3 or tabulated");

    cfg.n = r.num("N", cfg.n);
    (void)Grid(cfg.n);

    const std::string scheme = r.str("scheme", "monotone");
    if (scheme == "monotone") cfg.scheme.scheme = fd::Scheme::Monotone;
    else if (scheme == "filtered") cfg.scheme.scheme = fd::Scheme::Filtered;
    else throw ConfigError("scheme must be monotone or filtered");
    cfg.scheme.w = r.num("w", cfg.scheme.w);
    cfg.scheme.tol = r.num("tol", cfg.scheme.tol);
    cfg.scheme.check_every = r.num("check_every", cfg.scheme.check_every);
    cfg.scheme.max_iters = r.num("max_iters", cfg.scheme.max_iters);
    cfg.scheme.initial_value = r.num("init", cfg.scheme.initial_value);
    cfg.scheme.validate();

    cfg.paths_profile = r.str("paths_profile", "desk");
    if (cfg.paths_profile == "paper") cfg.mc = mc::McConfig::paper();
    else if (cfg.paths_profile == "desk") cfg.mc = mc::McConfig::desk();
    else throw ConfigError("paths_profile must be desk or paper");
    cfg.mc.n_paths = r.num("paths", cfg.mc.n_paths);
    cfg.mc.dt = r.num("dt", cfg.mc.dt);
    cfg.mc.t_max = r.num("t_max", cfg.mc.t_max);
    cfg.mc.seed = r.num("seed", cfg.mc.seed);
    cfg.mc.workers = r.num("workers", cfg.mc.workers);
    cfg.mc.step_budget = r.num("step_budget", cfg.mc.step_budget);
    cfg.mc.validate();

    cfg.x0 = r.num("x0", cfg.x0);
    cfg.z0 = r.num("z0", cfg.z0);
    if (!(cfg.x0 >= 0.0 && cfg.x0 <= 1.0 && cfg.z0 >= 0.0 && cfg.z0 <= 1.0))
        throw ConfigError("x0 and z0 must lie in [0, 1]");

    if (r.has("probe")) {
        cfg.probes.clear();
        const std::string text = r.str("probe", "");
        for (auto item : split(text, ';')) {
            if (item.empty()) continue;
            const auto xz = split(item, ',');
            if (xz.size() != 2) throw ConfigError("probe entries must be 'x,z'");
            const Probe p{to_number<double>("probe", xz[0]), to_number<double>("probe", xz[1])};
            if (!(p.x >= 0.0 && p.x <= 1.0 && p.z >= 0.0 && p.z <= 1.0))
                throw ConfigError("probe points must lie in [0, 1]^2");
            cfg.probes.push_back(p);
        }
        if (cfg.probes.empty()) throw ConfigError("probe list is empty");
    }

    if (r.has("Ns")) {
        cfg.ns.clear();
        const std::string text = r.str("Ns", "");
        for (auto item : split(text, ',')) cfg.ns.push_back(to_number<int>("Ns", item));
    }
    if (cfg.ns.empty()) throw ConfigError("Ns must not be empty");
    for (std::size_t k = 0; k < cfg.ns.size(); ++k) {
        (void)Grid(cfg.ns[k]);
        if (k > 0 && cfg.ns[k] != 2 * cfg.ns[k - 1]) throw ConfigError("Ns must strictly double");
    }
    cfg.reference = r.str("reference", cfg.reference);
    if (cfg.reference != "fine" && cfg.reference != "mc") throw ConfigError("reference must be fine or mc");
    cfg.reference_n = r.num("reference_N", cfg.reference_n);
    if (cfg.reference_n != 0) {
        (void)Grid(cfg.reference_n);
        if (cfg.reference_n % cfg.ns.back() != 0 || cfg.reference_n <= cfg.ns.back())
            throw ConfigError("reference_N must be a multiple of, and larger than, the finest N");
    }
    cfg.error_mode = r.str("mode", cfg.error_mode);
    if (cfg.error_mode != "probe" && cfg.error_mode != "norm") throw ConfigError("mode must be probe or norm");
    if (cfg.error_mode == "norm" && cfg.reference == "mc")
        throw ConfigError("mode=norm needs reference=fine (Monte Carlo gives point values only)");

    cfg.field_path = r.str("field", "");

    const std::string preset_text = r.str("preset", "");
    for (auto item : split(preset_text, ','))
        if (!item.empty()) cfg.presets.emplace_back(item);
    const std::string kappa_text = r.str("kappas", "");
    if (!kappa_text.empty())
        for (auto item : split(kappa_text, ',')) {
            const double k = to_number<double>("kappas", item);
            if (!(k > 0.0)) throw ConfigError("kappas must be positive");
            cfg.kappas.push_back(k);
        }
    const auto known = sensitivity_presets(cfg.params);
    for (const auto& p : cfg.presets)
        if (std::none_of(known.begin(), known.end(), [&](const auto& kp) { return kp.first == p; }))
            throw ConfigError("unknown preset '" + p + "'");
    // Presets replace base parameters, so they must satisfy the model conditions too.
    for (const auto& [name, params] : known) params.validate();

    cfg.samples = r.num("samples", cfg.samples);
    if (cfg.samples < 3) throw ConfigError("samples must be at least 3");
    cfg.out_dir = r.str("out", cfg.out_dir);
    if (cfg.out_dir.empty()) throw ConfigError("out must not be empty");
    return cfg;
}

KeyValues RunConfig::resolved() const {
    KeyValues kv;
    kv["delta"] = format_double(params.delta);
    kv["c"] = format_double(params.c);
    kv["R"] = format_double(params.R);
    kv["eta"] = format_double(params.eta);
    kv["omega"] = std::string(to_string(omega.kind));
    kv["kappa"] = format_double(omega.kappa);
    kv["f"] = std::string(to_string(boundary.kind));
    if (!boundary_table.empty()) kv["f_table"] = boundary_table;
    kv["scheme"] = scheme.scheme == fd::Scheme::Filtered ? "filtered" : "monotone";
    kv["N"] = std::to_string(n);
    kv["w"] = format_double(scheme.w);
    kv["tol"] = format_double(scheme.tol);
    kv["check_every"] = std::to_string(scheme.check_every);
    kv["max_iters"] = std::to_string(scheme.max_iters);
    kv["init"] = format_double(scheme.initial_value);
    kv["paths_profile"] = paths_profile;
    kv["paths"] = std::to_string(mc.n_paths);
    kv["dt"] = format_double(mc.dt);
    kv["t_max"] = format_double(mc.t_max);
    kv["seed"] = std::to_string(mc.seed);
    kv["workers"] = std::to_string(mc.workers);
    kv["step_budget"] = format_double(mc.step_budget);
    kv["x0"] = format_double(x0);
    kv["z0"] = format_double(z0);
    std::string probe_text;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (k) probe_text += ';';
        probe_text += format_double(probes[k].x) + "," + format_double(probes[k].z);
    }
    kv["probe"] = probe_text;
    std::string ns_text;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (k) ns_text += ',';
        ns_text += std::to_string(ns[k]);
    }
    kv["Ns"] = ns_text;
    kv["reference"] = reference;
    kv["reference_N"] = std::to_string(effective_reference_n());
    kv["mode"] = error_mode;
    if (!field_path.empty()) kv["field"] = field_path;
    if (!presets.empty()) {
        std::string s;
        for (std::size_t k = 0; k < presets.size(); ++k) s += (k ? "," : "") + presets[k];
        kv["preset"] = s;
    }
    if (!kappas.empty()) kv["kappas"] = join_numbers(kappas);
    kv["samples"] = std::to_string(samples);
    kv["out"] = out_dir;
    return kv;
}

int RunConfig::effective_reference_n() const { return reference_n != 0 ? reference_n : 2 * ns.back(); }

fd::Problem RunConfig::problem() const { return {params, omega, boundary, n}; }

std::vector<std::pair<std::string, ModelParams>> sensitivity_presets(const ModelParams& base) {
    std::vector<std::pair<std::string, ModelParams>> out;
    out.emplace_back("nominal", base);
    ModelParams p = base;
    p.R = 0.05;
    out.emplace_back("small-R", p);
    p = base;
    p.c = 0.6;
    out.emplace_back("large-c", p);
    p = base;
    p.delta = 0.75;
    out.emplace_back("large-delta", p);
    return out;
}

std::vector<SweepCase> RunConfig::sweep_cases() const {
    std::vector<SweepCase> cases;
    if (!kappas.empty()) {
        OmegaSpec spec = omega.is_linear() ? OmegaSpec::tanh(1.0) : omega;
        for (double k : kappas) {
            spec.kappa = k;
            cases.push_back({"kappa=" + format_double(k), params, spec});
        }
        return cases;
    }
    for (const auto& [name, p] : sensitivity_presets(params)) {
        if (!presets.empty() && std::find(presets.begin(), presets.end(), name) == presets.end()) continue;
        cases.push_back({name, p, omega});
    }
    return cases;
}

}  // namespace jhit::cli
