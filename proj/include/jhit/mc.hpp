#pragma once

// Euler-Maruyama simulation of the (x, z) system and Monte Carlo estimation
// of V(x0, z0) = E[f(Z_tau) exp(-eta tau) 1(tau < inf)].
//
// Every path draws its Gaussian increments from its own stream, derived from
// (seed, path_index), so estimates do not depend on how paths are split
// across workers.

#include <cstdint>
#include <memory>
#include <random>

#include "jhit/field.hpp"
#include "jhit/model.hpp"

namespace jhit::mc {

struct McConfig {
    long long n_paths = 100'000;
    double dt = 1e-3;
    double t_max = 10.0;
    std::uint64_t seed = 0x5eed'2024'0001ULL;
    double step_budget = 1e13;  // cap on n_paths * steps_per_path
    int workers = 1;

    /// Desk-scale defaults.
    static McConfig desk() { return {}; }
    /// 2e6 paths with dt = 5e-6 over 2e6 steps.
    static McConfig paper();

    [[nodiscard]] long long steps_per_path() const;
    /// Throws std::invalid_argument on bad values or when the step budget is exceeded.
    void validate() const;
};

struct PathOutcome {
    bool hit = false;
    double tau = 0.0;
    double z_at_tau = 0.0;
    bool lower_touch = false;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long n_hits = 0;
    long long n_paths = 0;
    long long lower_touches = 0;
};

/// Source of the omega factor on the z drift: constant 1 for the linear model,
/// omega(V(x, z)) with V bilinearly interpolated from a field otherwise.
class OmegaSource {
public:
    static OmegaSource constant();
    static OmegaSource from_field(FieldGrid field, const OmegaSpec& spec);

    [[nodiscard]] double operator()(double x, double z) const;
    [[nodiscard]] bool is_constant() const noexcept { return field_ == nullptr; }

private:
    std::shared_ptr<const FieldGrid> field_;
    OmegaSpec spec_;
};

[[nodiscard]] OmegaSource field_omega_source(FieldGrid field, const OmegaSpec& spec);

/// Gaussian increment stream of one path.
class PathStream {
public:
    PathStream(std::uint64_t seed, std::uint64_t path_index, double dt);
    double next() { return normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

struct State {
    double x;
    double z;
};

/// One Euler-Maruyama step; z is clamped to [0, 1], x is left as is.
[[nodiscard]] State step(double x, double z, double dt, double dw, double omega_value, const ModelParams& params);

[[nodiscard]] PathOutcome simulate_path(double x0, double z0, const ModelParams& params, const OmegaSource& omega,
                                        const McConfig& config, std::uint64_t path_index);

[[nodiscard]] McEstimate estimate_V(double x0, double z0, const BoundarySpec& boundary, const ModelParams& params,
                                    const OmegaSource& omega, const McConfig& config);

/// Classical Jacobi path dW = (b - W) dt + c sqrt(W(1 - W)) dB with the same
/// stepping, hitting and clamping rules as simulate_path.
[[nodiscard]] PathOutcome simulate_jacobi(double b, double c, double x0, const McConfig& config,
                                          std::uint64_t path_index);

/// Largest ordering violations seen when X is driven by the same noise as the
/// two comparison diffusions W_lo (b = 1 - delta) and W_hi (b = 2 delta rho + 1 - delta).
struct ComparisonTrace {
    long long steps = 0;
    double max_lower_gap = -1.0;  // max_t (W_lo - X), <= 0 when W_lo stays below X
    double max_upper_gap = -1.0;  // max_t (X - W_hi), <= 0 when W_hi stays above X
};

[[nodiscard]] ComparisonTrace compare_with_jacobi(double x0, double z0, const ModelParams& params,
                                                  const McConfig& config, std::uint64_t path_index);

}  // namespace jhit::mc
