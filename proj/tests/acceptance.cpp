// Acceptance suite: one PASS/FAIL line per criterion, details on indented lines.
// Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "jhit/analysis.hpp"
#include "jhit/fd.hpp"
#include "jhit/mc.hpp"
#include "jhit/model.hpp"
#include "oracle.hpp"

using namespace jhit;

namespace {

struct Check {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, std::string what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void info(std::string what) { notes.push_back("info " + what); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double linf(const FieldGrid& a, const FieldGrid& b) { return analysis::norms(a, b).linf; }

fd::Problem problem(BoundarySpec f, double eta, int n, OmegaSpec omega = OmegaSpec::linear()) {
    fd::Problem pb;
    pb.params.eta = eta;
    pb.boundary = std::move(f);
    pb.omega = omega;
    pb.n = n;
    return pb;
}

fd::SchemeConfig scheme(fd::Scheme s) {
    fd::SchemeConfig cfg;
    cfg.scheme = s;
    return cfg;
}

mc::McConfig mc_config(long long paths, double t_max, double dt = 1e-3) {
    mc::McConfig cfg;
    cfg.n_paths = paths;
    cfg.t_max = t_max;
    cfg.dt = dt;
    return cfg;
}

mc::McEstimate estimate(double x0, double z0, const BoundarySpec& f, const ModelParams& p, const mc::McConfig& cfg) {
    return mc::estimate_V(x0, z0, f, p, mc::OmegaSource::constant(), cfg);
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (double x : xs) s += (s.empty() ? "" : " ") + fmt("%.3f", x);
    return s;
}

// ---------------------------------------------------------------------------

constexpr double kBisectX0 = 0.8;

Check threshold_exactness() {
    Check c;
    const ModelParams p;
    const double r = rho(p);
    c.require(std::abs(r - 0.42) <= 4 * std::numeric_limits<double>::epsilon(), fmt("rho = %.17g", r));

    const auto cfg = mc_config(10'000, 20.0);
    auto hits = [&](double z0) { return estimate(kBisectX0, z0, BoundarySpec::f1(), p, cfg).n_hits; };
    double lo = 0.30;
    double hi = 0.60;
    const long long h_lo = hits(lo);
    const long long h_hi = hits(hi);
    c.info(fmt("x0 = %.2f: hits(%.2f) = %lld, hits(%.2f) = %lld", kBisectX0, lo, h_lo, hi, h_hi));
    if (h_lo != 0 || h_hi == 0) {
        c.require(false, "initial bracket does not straddle the transition");
        return c;
    }
    while (hi - lo > 0.01) {
        const double mid = 0.5 * (lo + hi);
        const long long h = hits(mid);
        c.info(fmt("hits(%.5f) = %lld", mid, h));
        (h > 0 ? hi : lo) = mid;
    }
    c.require(lo >= 0.40 && hi <= 0.44, fmt("transition bracketed in [%.5f, %.5f], target 0.42 +- 0.02", lo, hi));
    return c;
}

Check boundary_properties() {
    Check c;
    const ModelParams p;
    const auto f1 = BoundarySpec::f1();
    long long touches = 0;
    for (const auto& [x0, z0] : {std::pair{0.5, 1.0}, {0.5, 0.3}, {0.1, 0.0}}) {
        const auto e = estimate(x0, z0, f1, p, mc_config(10'000, 10.0));
        c.info(fmt("(x0, z0) = (%.1f, %.1f): %lld lower touches in %lld paths", x0, z0, e.lower_touches, e.n_paths));
        touches += e.lower_touches;
    }
    c.require(touches == 0, fmt("lower-boundary touches: %lld", touches));

    const auto below = estimate(0.5, 0.40, f1, p, mc_config(10'000, 20.0));
    c.require(below.n_hits == 0, fmt("z0 = 0.40, x0 = 0.5: %lld hits in 10^4 paths", below.n_hits));
    const auto above = estimate(0.9, 0.8, f1, p, mc_config(10'000, 20.0));
    c.require(above.n_hits > 0,
              fmt("z0 = 0.8, x0 = 0.9: hit fraction %.4f", static_cast<double>(above.n_hits) / above.n_paths));

    double lower_gap = -1.0;
    double upper_gap = -1.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto t = mc::compare_with_jacobi(0.5, 0.4, p, mc_config(1, 10.0), k);
        lower_gap = std::max(lower_gap, t.max_lower_gap);
        upper_gap = std::max(upper_gap, t.max_upper_gap);
    }
    c.info(fmt("coupled comparison over 10^3 paths from z0 = 0.4: max(W_lo - X) = %.3g, max(X - W_hi) = %.3g",
               lower_gap, upper_gap));
    return c;
}

Check ellipticity() {
    Check c;
    const ModelParams p;
    const Grid grid(200);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> row(0, 200);
    const double e = 1e-7;
    double min_dc = INFINITY;
    double max_db = -INFINITY;
    for (int s = 0; s < 1000; ++s) {
        const auto omega = (s % 2 == 0) ? OmegaSpec::tanh(0.5) : OmegaSpec::shifted_tanh(0.5);
        const int j = row(rng);
        const double vc = u(rng);
        const double vb = u(rng);
        auto lam = [&](double a, double b) { return fd::lambda_term(0, j, a, b, p, omega, grid); };
        min_dc = std::min(min_dc, (lam(vc + e, vb) - lam(vc - e, vb)) / (2 * e));
        max_db = std::max(max_db, (lam(vc, vb + e) - lam(vc, vb - e)) / (2 * e));
    }
    c.require(min_dc >= -1e-8, fmt("min dLambda/dv_center = %.3g over 10^3 samples", min_dc));
    c.require(max_db <= 1e-8, fmt("max dLambda/dv_below = %.3g over 10^3 samples", max_db));

    const auto pb = problem(BoundarySpec::f2(), 0.1, 200, OmegaSpec::tanh(0.5));
    auto zero = scheme(fd::Scheme::Monotone);
    auto ones = zero;
    ones.initial_value = 1.0;
    const auto a = fd::solve(pb, zero);
    const auto b = fd::solve(pb, ones);
    const double d = linf(a.field, b.field);
    c.require(d <= 100 * zero.tol, fmt("zero-init vs ones-init at N=200: linf = %.3g (bound %.1g)", d, 100 * zero.tol));
    return c;
}

Check oracle_equivalence() {
    Check c;
    for (const auto& f : {BoundarySpec::f1(), BoundarySpec::f2(), BoundarySpec::f3()}) {
        for (double eta : {0.0, 0.1}) {
            const auto pb = problem(f, eta, 4);
            auto cfg = scheme(fd::Scheme::Monotone);
            const double d = linf(fd::solve(pb, cfg).field, oracle::brute_force(pb.params, f, 4));
            c.require(d <= 1e-10, fmt("N=4, %s, eta=%.1f: linf vs dense elimination = %.3g",
                                      std::string(to_string(f.kind)).c_str(), eta, d));
        }
    }
    for (const auto& f : {BoundarySpec::f1(), BoundarySpec::f2(), BoundarySpec::f3()}) {
        const auto pb = problem(f, 0.1, 100);
        const auto cfg = scheme(fd::Scheme::Monotone);
        const double d = linf(fd::solve(pb, cfg).field, fd::solve_linear_direct(pb.params, f, Grid(100), 0.1));
        c.require(d <= 10 * cfg.tol, fmt("N=100, %s: linf vs direct tridiagonal rows = %.3g",
                                         std::string(to_string(f.kind)).c_str(), d));
    }
    return c;
}

Check consistency_identities() {
    Check c;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const double v = u(rng);
        for (const auto& om : {OmegaSpec::linear(), OmegaSpec::tanh(0.5), OmegaSpec::shifted_tanh(0.1)})
            worst = std::max(worst, std::abs(omega_bar(om, v, v) - omega_eval(om, v)));
    }
    c.require(worst <= 1e-12, fmt("max |omega_bar(v, v) - omega(v)| = %.3g over 10^3 samples", worst));

    const auto pb = problem(BoundarySpec::f3(), 0.1, 100, OmegaSpec::tanh(0.5));
    auto filt = scheme(fd::Scheme::Filtered);
    filt.filter = &fd::zero_filter;
    const bool same = fd::solve(pb, scheme(fd::Scheme::Monotone)).field == fd::solve(pb, filt).field;
    c.require(same, "filtered scheme with zero filter reproduces the monotone field bitwise (N=100)");

    const int n = 50;
    const Grid grid(n);
    std::vector<double> v;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) v.push_back(0.2 - 0.7 * grid.x(i) + 1.3 * grid.z(j));
    const FieldGrid lin(n, v);
    double gmax = 0.0;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            gmax = std::max(gmax, std::abs(fd::filtered_correction(i, j, lin, pb.params, pb.omega, grid)));
    c.require(gmax <= 1e-12, fmt("max |G| on a linear field = %.3g", gmax));
    return c;
}

Check mean_field_limit() {
    Check c;
    const auto nonlinear = problem(BoundarySpec::f2(), 0.1, 200, OmegaSpec::tanh(1e9));
    auto half = problem(BoundarySpec::f2(), 0.1, 200);
    half.params.R = nonlinear.params.R / 2;
    const auto cfg = scheme(fd::Scheme::Monotone);
    const double d = linf(fd::solve(nonlinear, cfg).field, fd::solve(half, cfg).field);
    c.require(d <= 1e-6, fmt("kappa = 1e9 vs linear with R/2 at N=200: linf = %.3g", d));
    return c;
}

Check convergence_rates() {
    Check c;
    const std::vector<int> ns{100, 200, 400, 800};
    const int n_ref = 1600;
    const double px = 0.5, pz = 1.0;
    struct Case {
        const char* name;
        BoundarySpec f;
        fd::Scheme s;
        std::function<bool(double)> ok;
        const char* band;
    };
    const std::vector<Case> cases{
        {"f3 monotone", BoundarySpec::f3(), fd::Scheme::Monotone, [](double r) { return r >= 0.7 && r <= 1.3; },
         "[0.7, 1.3]"},
        {"f3 filtered", BoundarySpec::f3(), fd::Scheme::Filtered, [](double r) { return r >= 1.2; }, ">= 1.2"},
        {"f1 monotone", BoundarySpec::f1(), fd::Scheme::Monotone, [](double r) { return r <= 0.7; }, "<= 0.7"},
        {"f1 filtered", BoundarySpec::f1(), fd::Scheme::Filtered, [](double r) { return r <= 0.7; }, "<= 0.7"},
    };
    c.info(fmt("probe (%.1f, %.1f), eta = 0.1, reference N = %d", px, pz, n_ref));
    for (const auto& cs : cases) {
        std::vector<FieldGrid> fields;
        for (int n : ns) fields.push_back(fd::solve(problem(cs.f, 0.1, n), scheme(cs.s)).field);
        const auto ref = fd::solve(problem(cs.f, 0.1, n_ref), scheme(cs.s)).field;
        const double vref = analysis::probe(ref, px, pz);

        std::vector<double> err, l1, li, succ;
        for (std::size_t k = 0; k < ns.size(); ++k) {
            err.push_back(std::abs(analysis::probe(fields[k], px, pz) - vref));
            const auto nm = analysis::norms(fields[k], ref);
            l1.push_back(nm.l1);
            li.push_back(nm.linf);
            const auto& next = k + 1 < ns.size() ? fields[k + 1] : ref;
            succ.push_back(std::abs(analysis::probe(fields[k], px, pz) - analysis::probe(next, px, pz)));
        }
        const auto rates = analysis::rates(err);
        bool ok = true;
        for (double r : rates) ok = ok && cs.ok(r);
        c.require(ok, fmt("%s: probe rates %s (V_ref = %.8f), target %s", cs.name, join(rates).c_str(), vref,
                          cs.band));
        c.info(fmt("%s: l1 rates %s, linf rates %s, successive-difference rates %s", cs.name,
                   join(analysis::rates(l1)).c_str(), join(analysis::rates(li)).c_str(),
                   join(analysis::rates(succ)).c_str()));
    }
    return c;
}

Check fd_mc_agreement() {
    Check c;
    const auto f2 = BoundarySpec::f2();
    const auto pb = problem(f2, 0.0, 800);
    const auto mono = fd::solve(pb, scheme(fd::Scheme::Monotone)).field;
    const auto filt = fd::solve(pb, scheme(fd::Scheme::Filtered)).field;
    const auto cfg = mc_config(100'000, 10.0);
    for (double x : {0.3, 0.5, 0.7}) {
        const auto e = estimate(x, 1.0, f2, pb.params, cfg);
        const double bound = 3 * e.std_error + 0.02;
        for (const auto& [name, field] : {std::pair{"monotone", &mono}, {"filtered", &filt}}) {
            const double v = analysis::probe(*field, x, 1.0);
            c.require(std::abs(v - e.mean) <= bound,
                      fmt("(%.1f, 1.0) %s: FD %.5f, MC %.5f +- %.5f, |diff| %.5f <= %.5f", x, name, v, e.mean,
                          e.std_error, std::abs(v - e.mean), bound));
        }
    }
    return c;
}

Check monotonicity() {
    Check c;
    const auto pb = problem(BoundarySpec::f2(), 0.0, 400, OmegaSpec::tanh(0.5));
    for (const auto s : {fd::Scheme::Monotone, fd::Scheme::Filtered}) {
        const auto r = analysis::monotonicity_report(fd::solve(pb, scheme(s)).field);
        const char* name = s == fd::Scheme::Monotone ? "monotone" : "filtered";
        c.require(r.min_difx >= -1e-10, fmt("%s: min Difx = %.3g (%lld below -1e-10)", name, r.min_difx,
                                            r.negative_difx));
        c.require(r.min_dify >= -1e-10, fmt("%s: min Dify = %.3g (%lld below -1e-10)", name, r.min_dify,
                                            r.negative_dify));
    }
    c.info("observed property of the computed fields, not a theorem");
    return c;
}

Check fichera_classification() {
    Check c;
    auto make = [](double delta, double cc, double R) {
        ModelParams p;
        p.delta = delta;
        p.c = cc;
        p.R = R;
        return p;
    };
    const std::vector<std::pair<const char*, ModelParams>> profiles{
        {"small R", make(0.5, 0.4, 0.05)}, {"large c", make(0.5, 0.6, 0.2)}, {"large delta", make(0.75, 0.4, 0.2)}};
    for (const auto& [name, p] : profiles) {
        const double flip = fichera_flip_on_x1(p);
        c.require(std::abs(flip - rho(p)) <= 1e-8, fmt("%s: flip %.12f, rho %.12f", name, flip, rho(p)));
        long long bc = 0;
        for (int k = 0; k <= 1000; ++k) {
            const double s = k / 1000.0;
            bc += fichera(0.0, s, {1.0, 0.0}, p).bc_required;
            bc += fichera(s, 0.0, {0.0, 1.0}, p).bc_required;
            bc += fichera(s, 1.0, {0.0, -1.0}, p).bc_required;
        }
        c.require(bc == 0, fmt("%s: %lld BC-required samples on x=0, z=0, z=1", name, bc));
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
        double time_limit;  // seconds, 0 for none
    };
    const std::vector<Criterion> criteria{
        {"threshold exactness", threshold_exactness, 120},
        {"boundary properties", boundary_properties, 120},
        {"ellipticity", ellipticity, 60},
        {"oracle equivalence", oracle_equivalence, 0},
        {"consistency identities", consistency_identities, 0},
        {"mean-field limit", mean_field_limit, 120},
        {"convergence rates", convergence_rates, 900},
        {"FD-MC agreement", fd_mc_agreement, 600},
        {"monotonicity", monotonicity, 0},
        {"Fichera classification", fichera_classification, 0},
    };
    // Optional arguments select criteria by number; default is all.
    std::vector<std::size_t> selected;
    for (int a = 1; a < argc; ++a) selected.push_back(std::stoul(argv[a]));
    if (selected.empty())
        for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);
    int failed = 0;
    for (const std::size_t number : selected) {
        const std::size_t k = number - 1;
        if (k >= criteria.size()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[k].run();
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[k].time_limit > 0)
            c.require(secs <= criteria[k].time_limit, fmt("runtime %.1f s, limit %.0f s", secs, criteria[k].time_limit));
        for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
        std::printf("%s criterion %zu: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, secs);
        std::fflush(stdout);
        failed += c.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failed, selected.size());
    return failed == 0 ? 0 : 1;
}
