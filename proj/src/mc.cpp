#include "jhit/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace jhit::mc {

namespace {

constexpr double kRhoTol = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_start(double x0, double z0) {
    if (!(x0 >= 0.0 && x0 <= 1.0) || !(z0 >= 0.0 && z0 <= 1.0))
        throw std::invalid_argument("initial state must lie in [0, 1]^2");
}

// Runs `body(k)` for k in [0, count) on up to `workers` threads, contiguous chunks.
template <class Body>
void parallel_for(long long count, int workers, Body body) {
    const int nthreads = static_cast<int>(std::clamp<long long>(workers, 1, std::max(1LL, count)));
    if (nthreads == 1) {
        for (long long k = 0; k < count; ++k) body(k);
        return;
    }
    std::vector<std::thread> threads;
    const long long chunk = (count + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const long long lo = t * chunk;
        const long long hi = std::min(count, lo + chunk);
        threads.emplace_back([lo, hi, &body] {
            for (long long k = lo; k < hi; ++k) body(k);
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace

McConfig McConfig::paper() {
    McConfig c;
    c.n_paths = 2'000'000;
    c.dt = 5e-6;
    c.t_max = 10.0;
    return c;
}

long long McConfig::steps_per_path() const {
    return static_cast<long long>(std::ceil(t_max / dt - 1e-9));
}

void McConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("n_paths must be at least 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
    if (!(dt < t_max)) throw std::invalid_argument("dt must be smaller than t_max");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    const double work = static_cast<double>(n_paths) * static_cast<double>(steps_per_path());
    if (!(work <= step_budget))
        throw std::invalid_argument("Monte Carlo work n_paths * steps exceeds the step budget");
}

OmegaSource OmegaSource::constant() { return {}; }

OmegaSource OmegaSource::from_field(FieldGrid field, const OmegaSpec& spec) {
    spec.validate();
    OmegaSource s;
    s.field_ = std::make_shared<const FieldGrid>(std::move(field));
    s.spec_ = spec;
    return s;
}

double OmegaSource::operator()(double x, double z) const {
    if (!field_) return 1.0;
    return omega_eval(spec_, field_->interpolate(x, z));
}

OmegaSource field_omega_source(FieldGrid field, const OmegaSpec& spec) {
    return OmegaSource::from_field(std::move(field), spec);
}

PathStream::PathStream(std::uint64_t seed, std::uint64_t path_index, double dt)
    : engine_(splitmix64(seed ^ splitmix64(path_index))), normal_(0.0, std::sqrt(dt)) {}

State step(double x, double z, double dt, double dw, double omega_value, const ModelParams& params) {
    const Drift d = drift(x, z, omega_value, params);
    const double x_next = x + d.dx * dt + diffusion(x, params) * dw;
    const double z_next = std::clamp(z + d.dz * dt, 0.0, 1.0);
    return {x_next, z_next};
}

PathOutcome simulate_path(double x0, double z0, const ModelParams& params, const OmegaSource& omega,
                          const McConfig& config, std::uint64_t path_index) {
    check_start(x0, z0);
    PathOutcome out;
    // Starting on x = 1 counts as a hit only where that boundary is reachable.
    if (x0 >= 1.0 && z0 > rho(params) + kRhoTol) {
        out.hit = true;
        out.tau = 0.0;
        out.z_at_tau = z0;
        return out;
    }
    PathStream stream(config.seed, path_index, config.dt);
    const long long steps = config.steps_per_path();
    double x = x0;
    double z = z0;
    for (long long k = 1; k <= steps; ++k) {
        const State s = step(x, z, config.dt, stream.next(), omega(x, z), params);
        x = s.x;
        z = s.z;
        if (x >= 1.0) {
            out.hit = true;
            out.tau = static_cast<double>(k) * config.dt;
            out.z_at_tau = z;
            return out;
        }
        if (x <= 0.0) {
            x = 0.0;
            out.lower_touch = true;
        }
    }
    out.tau = config.t_max;
    out.z_at_tau = z;
    return out;
}

McEstimate estimate_V(double x0, double z0, const BoundarySpec& boundary, const ModelParams& params,
                      const OmegaSource& omega, const McConfig& config) {
    params.validate();
    boundary.validate();
    config.validate();
    check_start(x0, z0);
    const auto n = config.n_paths;
    std::vector<double> payoff(static_cast<std::size_t>(n), 0.0);
    std::vector<unsigned char> hit(static_cast<std::size_t>(n), 0);
    std::vector<unsigned char> touch(static_cast<std::size_t>(n), 0);
    parallel_for(n, config.workers, [&](long long k) {
        const PathOutcome o = simulate_path(x0, z0, params, omega, config, static_cast<std::uint64_t>(k));
        const auto idx = static_cast<std::size_t>(k);
        touch[idx] = o.lower_touch ? 1 : 0;
        if (o.hit) {
            hit[idx] = 1;
            payoff[idx] = boundary_f(boundary, o.z_at_tau, params) * std::exp(-params.eta * o.tau);
        }
    });

    // Fixed summation order by path index.
    McEstimate est;
    est.n_paths = n;
    double sum = 0.0;
    for (std::size_t k = 0; k < payoff.size(); ++k) {
        sum += payoff[k];
        est.n_hits += hit[k];
        est.lower_touches += touch[k];
    }
    est.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double p : payoff) ss += (p - est.mean) * (p - est.mean);
        est.std_error = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    }
    return est;
}

PathOutcome simulate_jacobi(double b, double c, double x0, const McConfig& config, std::uint64_t path_index) {
    if (!(b > 0.0) || !(c > 0.0)) throw std::invalid_argument("simulate_jacobi: b and c must be positive");
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("simulate_jacobi: x0 must lie in [0, 1]");
    PathOutcome out;
    // x = 1 is reachable exactly when 2(1 - b) < c^2.
    if (x0 >= 1.0 && 2.0 * (1.0 - b) < c * c) {
        out.hit = true;
        return out;
    }
    PathStream stream(config.seed, path_index, config.dt);
    const long long steps = config.steps_per_path();
    double w = x0;
    for (long long k = 1; k <= steps; ++k) {
        w += (b - w) * config.dt + c * std::sqrt(std::max(0.0, w * (1.0 - w))) * stream.next();
        if (w >= 1.0) {
            out.hit = true;
            out.tau = static_cast<double>(k) * config.dt;
            return out;
        }
        if (w <= 0.0) {
            w = 0.0;
            out.lower_touch = true;
        }
    }
    out.tau = config.t_max;
    return out;
}

ComparisonTrace compare_with_jacobi(double x0, double z0, const ModelParams& params, const McConfig& config,
                                    std::uint64_t path_index) {
    check_start(x0, z0);
    const double b_lo = 1.0 - params.delta;
    const double b_hi = 2.0 * params.delta * rho(params) + 1.0 - params.delta;
    PathStream stream(config.seed, path_index, config.dt);
    const long long steps = config.steps_per_path();
    const double dt = config.dt;
    const double c = params.c;
    auto sig = [c](double v) { return c * std::sqrt(std::max(0.0, v * (1.0 - v))); };

    ComparisonTrace trace;
    double x = x0;
    double z = z0;
    double w_lo = x0;
    double w_hi = x0;
    for (long long k = 1; k <= steps; ++k) {
        const double dw = stream.next();
        const State s = step(x, z, dt, dw, 1.0, params);
        w_lo += (b_lo - w_lo) * dt + sig(w_lo) * dw;
        w_hi += (b_hi - w_hi) * dt + sig(w_hi) * dw;
        x = s.x;
        z = s.z;
        trace.steps = k;
        if (x >= 1.0) break;
        x = std::max(x, 0.0);
        w_lo = std::clamp(w_lo, 0.0, 1.0);
        w_hi = std::clamp(w_hi, 0.0, 1.0);
        trace.max_lower_gap = std::max(trace.max_lower_gap, w_lo - x);
        trace.max_upper_gap = std::max(trace.max_upper_gap, x - w_hi);
    }
    return trace;
}

}  // namespace jhit::mc
