#include "jhit/fd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace jhit::fd {

namespace {

// z_j must clear rho by more than rounding to count as a Dirichlet row.
constexpr double kGammaTol = 1e-12;

double x_diffusion_weight(double x, const ModelParams& p, double h) {
    return 0.5 * p.c * p.c * x * (1.0 - x) / (h * h);
}

// Per-row data that does not depend on the iterate.
struct RowSetup {
    std::vector<double> A;
    std::vector<double> B;
    std::vector<double> q;          // x drift at each vertex
    std::vector<double> omega_below;  // omega(V_{i,j-1}), nonlinear only
    double k_over_h = 0.0;          // z_decay(z_j) / h
    double k = 0.0;                 // z_decay(z_j)
    bool dirichlet = false;         // (N, j) in Gamma_num
    double f = 0.0;
};

RowSetup setup_row(int j, const FieldGrid& V, const Problem& pb, const Grid& grid) {
    const int n = grid.n();
    const double h = grid.h();
    const auto& p = pb.params;
    const double z = grid.z(j);
    RowSetup s;
    s.A.resize(n + 1);
    s.B.resize(n + 1);
    s.q.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = grid.x(i);
        const double q = p.x_drift(x, z);
        const double d = x_diffusion_weight(x, p, h);
        s.q[i] = q;
        s.A[i] = d + std::max(-q, 0.0) / h;
        s.B[i] = d + std::max(q, 0.0) / h;
    }
    s.k = p.z_decay(z);
    s.k_over_h = s.k / h;
    s.dirichlet = in_gamma_num(n, j, p, grid);
    if (s.dirichlet) s.f = boundary_f(pb.boundary, z, p);
    if (!pb.omega.is_linear()) {
        s.omega_below.resize(n + 1);
        for (int i = 0; i <= n; ++i) s.omega_below[i] = omega_eval(pb.omega, V.value(i, j - 1));
    }
    return s;
}

constexpr double kD3c0 = 11.0 / 6.0;
constexpr double kD3c2 = 1.5;
constexpr double kD3c3 = 1.0 / 3.0;

}  // namespace

double standard_filter(double y) noexcept { return (y >= -1.0 && y <= 1.0) ? y : 0.0; }

double zero_filter(double) noexcept { return 0.0; }

void SchemeConfig::validate() const {
    if (!(w >= 0.0 && w < 1.0)) throw std::invalid_argument("relaxation factor w must lie in [0, 1)");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (check_every < 1) throw std::invalid_argument("check_every must be at least 1");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    if (!std::isfinite(initial_value)) throw std::invalid_argument("initial_value must be finite");
    if (filter == nullptr) throw std::invalid_argument("filter function must be set");
}

void Problem::validate() const {
    params.validate();
    omega.validate();
    boundary.validate();
    (void)Grid(n);
}

long long SolveReport::total_iterations() const noexcept {
    long long total = 0;
    for (const auto& r : rows) total += r.iterations;
    return total;
}

long long SolveReport::max_row_iterations() const noexcept {
    long long m = 0;
    for (const auto& r : rows) m = std::max(m, r.iterations);
    return m;
}

NonConvergenceError::NonConvergenceError(int row, long long iterations, double residual)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "row " << row << " did not converge after " << iterations << " iterations (residual "
             << residual << ")";
          return os.str();
      }()),
      row_(row),
      iterations_(iterations),
      residual_(residual) {}

bool in_gamma_num(int i, int j, const ModelParams& params, const Grid& grid) {
    return i == grid.n() && grid.z(j) > rho(params) + kGammaTol;
}

std::vector<int> gamma_num(const ModelParams& params, const Grid& grid) {
    std::vector<int> rows;
    for (int j = 0; j <= grid.n(); ++j)
        if (in_gamma_num(grid.n(), j, params, grid)) rows.push_back(j);
    return rows;
}

RowCoefficients assemble(int i, int j, const FieldGrid& V, const ModelParams& params, const OmegaSpec& omega,
                         const BoundarySpec& boundary, const Grid& grid) {
    const int n = grid.n();
    if (i < 0 || i > n || j < 0 || j > n) throw std::out_of_range("assemble: vertex index out of range");
    RowCoefficients rc;
    if (in_gamma_num(i, j, params, grid)) {
        rc.D = 1.0;
        rc.E = boundary_f(boundary, grid.z(j), params);
        return rc;
    }
    const double h = grid.h();
    const double x = grid.x(i);
    const double z = grid.z(j);
    const double q = params.x_drift(x, z);
    const double d = x_diffusion_weight(x, params, h);
    rc.A = d + std::max(-q, 0.0) / h;
    rc.B = d + std::max(q, 0.0) / h;
    rc.C = params.z_decay(z) * omega_bar(omega, V(i, j), V.value(i, j - 1)) / h;
    return rc;
}

double lambda_term(int i, int j, double v_center, double v_below, const ModelParams& params,
                   const OmegaSpec& omega, const Grid& grid) {
    (void)i;
    const double slope = (v_center - v_below) / grid.h();
    return params.z_decay(grid.z(j)) *
           (omega_eval(omega, v_center) * std::max(slope, 0.0) + omega_eval(omega, v_below) * std::min(slope, 0.0));
}

double third_order_dx(int i, int j, const FieldGrid& V, bool forward) {
    const int n = V.n();
    if (i < 3 || i > n - 3 || j < 0 || j > n) throw std::out_of_range("third_order_dx: stencil out of range");
    const double h = 1.0 / n;
    if (forward)
        return (-kD3c0 * V(i, j) + 3.0 * V(i + 1, j) - kD3c2 * V(i + 2, j) + kD3c3 * V(i + 3, j)) / h;
    return (kD3c0 * V(i, j) - 3.0 * V(i - 1, j) + kD3c2 * V(i - 2, j) - kD3c3 * V(i - 3, j)) / h;
}

double third_order_dz(int i, int j, const FieldGrid& V) {
    const int n = V.n();
    if (j < 3 || j > n || i < 0 || i > n) throw std::out_of_range("third_order_dz: stencil out of range");
    const double h = 1.0 / n;
    return (kD3c0 * V(i, j) - 3.0 * V(i, j - 1) + kD3c2 * V(i, j - 2) - kD3c3 * V(i, j - 3)) / h;
}

ThirdOrderDiffs third_order_diffs(int i, int j, const FieldGrid& V, bool forward_x) {
    return {third_order_dx(i, j, V, forward_x), third_order_dz(i, j, V)};
}

double filtered_correction(int i, int j, const FieldGrid& V, const ModelParams& params, const OmegaSpec& omega,
                           const Grid& grid, FilterFn filter) {
    const int n = grid.n();
    const double h = grid.h();
    const double eps = std::sqrt(h);
    double g = 0.0;
    if (i >= 3 && i <= n - 3) {
        const double q = params.x_drift(grid.x(i), grid.z(j));
        const bool forward = q >= 0.0;
        const double d1 = forward ? (V(i + 1, j) - V(i, j)) / h : (V(i, j) - V(i - 1, j)) / h;
        const double d3 = third_order_dx(i, j, V, forward);
        g += eps * filter(q * (d3 - d1) / eps);
    }
    if (j >= 3) {
        const double kz = -params.z_decay(grid.z(j)) * omega_bar(omega, V(i, j), V(i, j - 1));
        const double d1 = (V(i, j) - V(i, j - 1)) / h;
        const double d3 = third_order_dz(i, j, V);
        g += eps * filter(kz * (d3 - d1) / eps);
    }
    return g;
}

RowReport relax_row(int j, FieldGrid& V, const Problem& problem, const SchemeConfig& config) {
    const Grid grid(problem.n);
    const int n = grid.n();
    if (V.n() != n) throw std::invalid_argument("relax_row: field resolution does not match problem");
    if (j < 0 || j > n) throw std::out_of_range("relax_row: row index out of range");

    const RowSetup s = setup_row(j, V, problem, grid);
    const double h = grid.h();
    const double eps = std::sqrt(h);
    const double eta = problem.params.eta;
    const double w = config.w;
    const bool linear = problem.omega.is_linear();
    const bool filtered = config.scheme == Scheme::Filtered;
    const FilterFn filter = config.filter;

    std::span<double> v = V.row(j);
    const std::vector<double> zeros(static_cast<std::size_t>(n + 1), 0.0);
    auto below_row = [&](int k) -> std::span<const double> {
        if (j - k < 0) return zeros;
        return std::as_const(V).row(j - k);
    };
    const auto b1 = below_row(1);
    const auto b2 = below_row(2);
    const auto b3 = below_row(3);
    const bool z_filter = filtered && j >= 3;

    // The diagonal eta + A + B + C is positive off Gamma_num for valid parameters:
    // A + B vanishes only where x(1-x) = 0 and q = 0, which no vertex satisfies.
    // Linear rows have iterate-independent diagonals, so fold (1 - w) / diag once.
    std::vector<double> damped_inv;
    if (linear) {
        damped_inv.resize(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) damped_inv[i] = (1.0 - w) / (eta + s.A[i] + s.B[i] + s.k_over_h);
    }

    std::vector<double> snapshot(v.begin(), v.end());
    double residual = 0.0;

    for (long long iter = 1; iter <= config.max_iters; ++iter) {
        for (int i = 0; i <= n; ++i) {
            if (i == n && s.dirichlet) {
                v[i] = s.f;
                continue;
            }
            const double vc = v[i];
            const double vb = b1[i];
            double om = 1.0;
            if (!linear) om = vc >= vb ? omega_eval(problem.omega, vc) : s.omega_below[i];
            const double C = s.k_over_h * om;
            const double left = i > 0 ? v[i - 1] : 0.0;
            const double right = i < n ? v[i + 1] : 0.0;

            double g = 0.0;
            if (filtered) {
                if (i >= 3 && i <= n - 3) {
                    const double q = s.q[i];
                    double d1;
                    double d3;
                    if (q >= 0.0) {
                        d1 = (v[i + 1] - vc) / h;
                        d3 = (-kD3c0 * vc + 3.0 * v[i + 1] - kD3c2 * v[i + 2] + kD3c3 * v[i + 3]) / h;
                    } else {
                        d1 = (vc - v[i - 1]) / h;
                        d3 = (kD3c0 * vc - 3.0 * v[i - 1] + kD3c2 * v[i - 2] - kD3c3 * v[i - 3]) / h;
                    }
                    g += eps * filter(q * (d3 - d1) / eps);
                }
                if (z_filter) {
                    const double kz = -s.k * om;
                    const double d1 = (vc - vb) / h;
                    const double d3 = (kD3c0 * vc - 3.0 * vb + kD3c2 * b2[i] - kD3c3 * b3[i]) / h;
                    g += eps * filter(kz * (d3 - d1) / eps);
                }
            }

            // Terms independent of the freshly updated left neighbour go first.
            const double numer = (s.B[i] * right + C * vb + g) + s.A[i] * left;
            if (linear) {
                v[i] = w * vc + numer * damped_inv[i];
            } else {
                v[i] = w * vc + (1.0 - w) * numer / (eta + s.A[i] + s.B[i] + C);
            }
        }

        if (iter % config.check_every == 0) {
            residual = 0.0;
            for (int i = 0; i <= n; ++i) {
                residual = std::max(residual, std::abs(v[i] - snapshot[i]));
                snapshot[i] = v[i];
            }
            if (!std::isfinite(residual)) throw NonConvergenceError(j, iter, residual);
            if (residual < config.tol) return {j, iter, residual};
        }
    }
    throw NonConvergenceError(j, config.max_iters, residual);
}

Solution solve(const Problem& problem, const SchemeConfig& config) {
    problem.validate();
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    Solution sol{FieldGrid(problem.n, config.initial_value), {}};
    sol.report.rows.reserve(static_cast<std::size_t>(problem.n + 1));
    for (int j = 0; j <= problem.n; ++j) sol.report.rows.push_back(relax_row(j, sol.field, problem, config));
    sol.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

FieldGrid solve_linear_direct(const ModelParams& params, const BoundarySpec& boundary, const Grid& grid,
                              double eta) {
    ModelParams p = params;
    p.eta = eta;
    p.validate();
    boundary.validate();
    const int n = grid.n();
    const double h = grid.h();
    FieldGrid V(n);
    std::vector<double> lower(n + 1), diag(n + 1), upper(n + 1), rhs(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double z = grid.z(j);
        const double C = p.z_decay(z) / h;
        for (int i = 0; i <= n; ++i) {
            if (in_gamma_num(i, j, p, grid)) {
                lower[i] = 0.0;
                upper[i] = 0.0;
                diag[i] = 1.0;
                rhs[i] = boundary_f(boundary, z, p);
                continue;
            }
            const double x = grid.x(i);
            const double q = p.x_drift(x, z);
            const double d = x_diffusion_weight(x, p, h);
            const double A = d + std::max(-q, 0.0) / h;
            const double B = d + std::max(q, 0.0) / h;
            lower[i] = -A;
            upper[i] = -B;
            diag[i] = eta + A + B + C;
            rhs[i] = C * V.value(i, j - 1);
        }
        // Thomas elimination; ghost couplings lower[0], upper[n] multiply zeros.
        for (int i = 1; i <= n; ++i) {
            if (std::abs(diag[i - 1]) <= 1e-12 * (std::abs(lower[i - 1]) + std::abs(upper[i - 1]) + 1e-300))
                throw std::domain_error("solve_linear_direct: vanishing pivot in row " + std::to_string(j));
            const double m = lower[i] / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        const double scale = std::abs(lower[n]) + std::abs(upper[n]) + std::abs(eta) + 1.0;
        if (std::abs(diag[n]) <= 1e-12 * scale)
            throw std::domain_error("solve_linear_direct: vanishing pivot in row " + std::to_string(j));
        V(n, j) = rhs[n] / diag[n];
        for (int i = n - 1; i >= 0; --i) V(i, j) = (rhs[i] - upper[i] * V(i + 1, j)) / diag[i];
    }
    return V;
}

}  // namespace jhit::fd
