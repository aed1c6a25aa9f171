#include "cli/commands.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cli/log.hpp"
#include "cli/output.hpp"
#include "jhit/analysis.hpp"
#include "jhit/fd.hpp"
#include "jhit/mc.hpp"

namespace jhit::cli {

namespace {

using nlohmann::ordered_json;

// Guards against one invocation writing the same path twice.
class Writer {
public:
    Writer(const RunConfig& config, std::string command)
        : config_(config), command_(std::move(command)), echo_(config_comment_block(command_, config.resolved())) {}

    [[nodiscard]] const std::string& echo() const { return echo_; }

    void write(const std::string& name, const std::string& body) {
        const std::string path = join_path(config_.out_dir, name);
        if (!written_.insert(path).second) throw std::logic_error("output path written twice: " + path);
        write_file_atomic(path, body);
        log::info("wrote " + path);
        paths_.push_back(path);
    }

    void write_csv(const std::string& name, const std::string& rows) { write(name, echo_ + rows); }

    void write_json(const std::string& name, ordered_json doc) {
        doc["command"] = command_;
        ordered_json cfg = ordered_json::object();
        for (const auto& [k, v] : config_.resolved()) cfg[k] = v;
        doc["config"] = std::move(cfg);
        write(name, doc.dump(2) + "\n");
    }

    std::vector<std::string> take() { return std::move(paths_); }

private:
    const RunConfig& config_;
    std::string command_;
    std::string echo_;
    std::set<std::string> written_;
    std::vector<std::string> paths_;
};

std::string fmt(double v) { return format_double(v); }

ordered_json report_json(const fd::Solution& sol, const RunConfig& config, const fd::Problem& problem) {
    ordered_json doc;
    doc["N"] = problem.n;
    doc["rho"] = rho(problem.params);
    doc["wall_seconds"] = sol.report.wall_seconds;
    doc["total_iterations"] = sol.report.total_iterations();
    doc["max_row_iterations"] = sol.report.max_row_iterations();
    ordered_json probes = ordered_json::array();
    for (const auto& p : config.probes)
        probes.push_back({{"x", p.x}, {"z", p.z}, {"V", analysis::probe(sol.field, p.x, p.z)}});
    doc["probes"] = std::move(probes);
    const auto mono = analysis::monotonicity_report(sol.field);
    doc["monotonicity"] = {{"min_difx", mono.min_difx},
                           {"min_dify", mono.min_dify},
                           {"negative_difx", mono.negative_difx},
                           {"negative_dify", mono.negative_dify}};
    ordered_json rows = ordered_json::array();
    for (const auto& r : sol.report.rows)
        rows.push_back({{"j", r.j}, {"iterations", r.iterations}, {"residual", r.residual}});
    doc["rows"] = std::move(rows);
    return doc;
}

fd::Solution solve_logged(const fd::Problem& problem, const fd::SchemeConfig& scheme) {
    std::ostringstream os;
    os << "solving N=" << problem.n << " (" << (scheme.scheme == fd::Scheme::Filtered ? "filtered" : "monotone")
       << ", f=" << to_string(problem.boundary.kind) << ", omega=" << to_string(problem.omega.kind) << ")";
    log::info(os.str());
    auto sol = fd::solve(problem, scheme);
    std::ostringstream done;
    done << "N=" << problem.n << " done in " << sol.report.wall_seconds << " s, "
         << sol.report.total_iterations() << " sweeps";
    log::info(done.str());
    return sol;
}

mc::OmegaSource omega_source_for(const RunConfig& config, const FieldGrid* field) {
    if (field == nullptr || config.omega.is_linear()) return mc::OmegaSource::constant();
    return mc::OmegaSource::from_field(*field, config.omega);
}

std::string rate_text(double r) { return std::isnan(r) ? std::string{} : fmt(r); }

}  // namespace

std::vector<std::string> cmd_solve(const RunConfig& config) {
    Writer out(config, "solve");
    const auto problem = config.problem();
    const auto sol = solve_logged(problem, config.scheme);
    out.write("field.csv", field_csv_text(sol.field, out.echo()));
    out.write_json("report.json", report_json(sol, config, problem));
    return out.take();
}

std::vector<std::string> cmd_mc(const RunConfig& config) {
    Writer out(config, "mc");
    std::optional<FieldGrid> field;
    if (!config.field_path.empty()) {
        field = read_field_csv(config.field_path);
        if (config.omega.is_linear()) log::warn("--field given with omega=linear; the field has no effect");
    }
    const auto omega = omega_source_for(config, field ? &*field : nullptr);
    const auto est = mc::estimate_V(config.x0, config.z0, config.boundary, config.params, omega, config.mc);
    std::string rows = "x0,z0,mean,std_error,n_hits,n_paths,lower_touches\n";
    rows += fmt(config.x0) + "," + fmt(config.z0) + "," + fmt(est.mean) + "," + fmt(est.std_error) + "," +
            std::to_string(est.n_hits) + "," + std::to_string(est.n_paths) + "," +
            std::to_string(est.lower_touches) + "\n";
    out.write_csv("mc.csv", rows);
    return out.take();
}

ConvergenceResult run_convergence(const RunConfig& config) {
    ConvergenceResult result;
    result.ns = config.ns;
    const bool fine = config.reference == "fine";

    std::vector<int> all_ns = config.ns;
    if (fine) all_ns.push_back(config.effective_reference_n());
    std::vector<std::future<fd::Solution>> jobs;
    for (int n : all_ns) {
        fd::Problem problem = config.problem();
        problem.n = n;
        jobs.push_back(std::async(std::launch::async, [problem, scheme = config.scheme] {
            return solve_logged(problem, scheme);
        }));
    }
    std::vector<FieldGrid> fields;
    for (auto& job : jobs) fields.push_back(job.get().field);

    std::vector<double> ref_values;
    if (fine) {
        for (const auto& p : config.probes) ref_values.push_back(analysis::probe(fields.back(), p.x, p.z));
    } else {
        const auto omega = config.omega.is_linear() ? mc::OmegaSource::constant()
                                                    : mc::OmegaSource::from_field(fields.back(), config.omega);
        for (const auto& p : config.probes)
            ref_values.push_back(mc::estimate_V(p.x, p.z, config.boundary, config.params, omega, config.mc).mean);
    }

    for (std::size_t k = 0; k < config.ns.size(); ++k) {
        if (config.error_mode == "norm") {
            const auto nm = analysis::norms(fields[k], fields.back());
            result.error_l1.push_back(nm.l1);
            result.error_linf.push_back(nm.linf);
        } else {
            double e = 0.0;
            for (std::size_t p = 0; p < config.probes.size(); ++p)
                e = std::max(e, std::abs(analysis::probe(fields[k], config.probes[p].x, config.probes[p].z) -
                                         ref_values[p]));
            result.error.push_back(e);
        }
    }
    return result;
}

std::vector<std::string> cmd_convergence(const RunConfig& config) {
    Writer out(config, "convergence");
    const auto res = run_convergence(config);
    std::string rows;
    if (config.error_mode == "norm") {
        const auto t1 = analysis::convergence_table(res.ns, res.error_l1);
        const auto ti = analysis::convergence_table(res.ns, res.error_linf);
        rows = "N,error_l1,rate_l1,error_linf,rate_linf\n";
        for (std::size_t k = 0; k < t1.size(); ++k)
            rows += std::to_string(t1[k].n) + "," + fmt(t1[k].error) + "," + rate_text(t1[k].rate) + "," +
                    fmt(ti[k].error) + "," + rate_text(ti[k].rate) + "\n";
    } else {
        rows = "N,error,rate\n";
        for (const auto& r : analysis::convergence_table(res.ns, res.error))
            rows += std::to_string(r.n) + "," + fmt(r.error) + "," + rate_text(r.rate) + "\n";
    }
    out.write_csv("convergence.csv", rows);
    return out.take();
}

std::vector<std::string> cmd_fichera(const RunConfig& config) {
    Writer out(config, "fichera");
    struct Edge {
        const char* name;
        bool vertical;  // x fixed
        double fixed;
        std::pair<double, double> normal;
    };
    const Edge edges[] = {{"x=0", true, 0.0, {1.0, 0.0}},
                          {"x=1", true, 1.0, {-1.0, 0.0}},
                          {"z=0", false, 0.0, {0.0, 1.0}},
                          {"z=1", false, 1.0, {0.0, -1.0}}};
    const double r = rho(config.params);
    const double flip = fichera_flip_on_x1(config.params);

    std::string rows = "edge,s,x,z,n1,n2,value,bc_required\n";
    std::string summary = "edge,samples,bc_required_count,bc_from,bc_to,flip,rho\n";
    for (const auto& e : edges) {
        long long count = 0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int k = 0; k < config.samples; ++k) {
            const double s = static_cast<double>(k) / (config.samples - 1);
            const double x = e.vertical ? e.fixed : s;
            const double z = e.vertical ? s : e.fixed;
            const auto f = fichera(x, z, e.normal, config.params);
            rows += std::string(e.name) + "," + fmt(s) + "," + fmt(x) + "," + fmt(z) + "," + fmt(e.normal.first) +
                    "," + fmt(e.normal.second) + "," + fmt(f.value) + "," + (f.bc_required ? "1" : "0") + "\n";
            if (f.bc_required) {
                ++count;
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        }
        const bool x1 = std::string_view(e.name) == "x=1";
        summary += std::string(e.name) + "," + std::to_string(config.samples) + "," + std::to_string(count) + "," +
                   (count ? fmt(x1 ? flip : lo) : "") + "," + (count ? fmt(hi) : "") + "," +
                   (x1 ? fmt(flip) : "") + "," + fmt(r) + "\n";
    }
    out.write_csv("fichera.csv", rows);
    out.write_csv("fichera_summary.csv", summary);
    return out.take();
}

std::vector<std::string> cmd_crossval(const RunConfig& config) {
    Writer out(config, "crossval");
    const auto problem = config.problem();
    const auto sol = solve_logged(problem, config.scheme);
    const auto omega = omega_source_for(config, &sol.field);
    std::string rows = "x,z,fd,mc_mean,std_error,z_score\n";
    for (const auto& p : config.probes) {
        const double v = analysis::probe(sol.field, p.x, p.z);
        const auto est = mc::estimate_V(p.x, p.z, config.boundary, config.params, omega, config.mc);
        double z_score = 0.0;
        if (est.std_error > 0.0) z_score = (v - est.mean) / est.std_error;
        else if (v != est.mean) z_score = std::copysign(std::numeric_limits<double>::infinity(), v - est.mean);
        rows += fmt(p.x) + "," + fmt(p.z) + "," + fmt(v) + "," + fmt(est.mean) + "," + fmt(est.std_error) + "," +
                fmt(z_score) + "\n";
    }
    out.write_csv("crossval.csv", rows);
    out.write("field.csv", field_csv_text(sol.field, out.echo()));
    return out.take();
}

std::vector<std::string> cmd_sweep(const RunConfig& config) {
    Writer out(config, "sweep");
    std::string rows = "case,delta,c,R,omega,kappa,rho,x,z,V\n";
    for (const auto& sc : config.sweep_cases()) {
        fd::Problem problem = config.problem();
        problem.params = sc.params;
        problem.omega = sc.omega;
        const auto sol = solve_logged(problem, config.scheme);
        out.write("field_" + sc.name + ".csv", field_csv_text(sol.field, out.echo() + "# case=" + sc.name + "\n"));
        auto doc = report_json(sol, config, problem);
        doc["case"] = sc.name;
        doc["params"] = {{"delta", sc.params.delta}, {"c", sc.params.c}, {"R", sc.params.R}, {"eta", sc.params.eta}};
        doc["omega"] = {{"kind", std::string(to_string(sc.omega.kind))}, {"kappa", sc.omega.kappa}};
        out.write_json("report_" + sc.name + ".json", std::move(doc));
        for (const auto& p : config.probes)
            rows += sc.name + "," + fmt(sc.params.delta) + "," + fmt(sc.params.c) + "," + fmt(sc.params.R) + "," +
                    std::string(to_string(sc.omega.kind)) + "," + fmt(sc.omega.kappa) + "," + fmt(rho(sc.params)) +
                    "," + fmt(p.x) + "," + fmt(p.z) + "," + fmt(analysis::probe(sol.field, p.x, p.z)) + "\n";
    }
    out.write_csv("sweep.csv", rows);
    return out.take();
}

}  // namespace jhit::cli
