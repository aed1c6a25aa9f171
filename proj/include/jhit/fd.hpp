#pragma once

// Finite-difference engine for the boundary-hitting Kolmogorov equation
//
//   eta V = q(x,z) V_x - k(z) omega(V) V_z + (c^2/2) x(1-x) V_xx   on (0,1)^2,
//   V = f(z)                                                          on {x=1} x (rho,1),
//
// with q = 2 delta z + 1 - delta - x and k(z) = z_decay(z) >= 0. The z drift
// points toward z = 0 and has no diffusion, so each row j only couples to the
// row below it. Rows are solved in order j = 0..N by a damped point relaxation.

#include <span>
#include <stdexcept>
#include <vector>

#include "jhit/field.hpp"
#include "jhit/model.hpp"

namespace jhit::fd {

enum class Scheme { Monotone, Filtered };

using FilterFn = double (*)(double);

/// F(y) = y on [-1, 1], 0 elsewhere.
[[nodiscard]] double standard_filter(double y) noexcept;
/// F == 0; turns the filtered scheme back into the monotone one.
[[nodiscard]] double zero_filter(double y) noexcept;

struct SchemeConfig {
    Scheme scheme = Scheme::Monotone;
    double w = 0.5;                 // relaxation factor in [0, 1)
    double tol = 1e-12;             // on max |V - V_at_last_check| over a row
    int check_every = 100;          // iterations between convergence checks
    long long max_iters = 1'000'000;  // per row
    double initial_value = 0.0;     // initial guess at every vertex
    FilterFn filter = &standard_filter;

    void validate() const;
};

struct Problem {
    ModelParams params;
    OmegaSpec omega;
    BoundarySpec boundary;
    int n = 100;

    void validate() const;
};

struct RowCoefficients {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    double E = 0.0;
    double G = 0.0;
};

struct RowReport {
    int j = 0;
    long long iterations = 0;
    double residual = 0.0;
};

struct SolveReport {
    std::vector<RowReport> rows;
    double wall_seconds = 0.0;

    [[nodiscard]] long long total_iterations() const noexcept;
    [[nodiscard]] long long max_row_iterations() const noexcept;
};

struct Solution {
    FieldGrid field;
    SolveReport report;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(int row, long long iterations, double residual);

    [[nodiscard]] int row() const noexcept { return row_; }
    [[nodiscard]] long long iterations() const noexcept { return iterations_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    int row_;
    long long iterations_;
    double residual_;
};

/// Row indices j such that (N, j) carries Dirichlet data, i.e. z_j > rho.
[[nodiscard]] std::vector<int> gamma_num(const ModelParams& params, const Grid& grid);

[[nodiscard]] bool in_gamma_num(int i, int j, const ModelParams& params, const Grid& grid);

/// Coefficients of the monotone row equation
///   -A V_{i-1,j} + (eta + A + B + C + D) V_{i,j} - B V_{i+1,j} = C V_{i,j-1} + E
/// at vertex (i, j), evaluated from the current iterate V. G is left at 0.
[[nodiscard]] RowCoefficients assemble(int i, int j, const FieldGrid& V, const ModelParams& params,
                                       const OmegaSpec& omega, const BoundarySpec& boundary, const Grid& grid);

/// Nonlinear z-transport term k(z_j) omega_bar(v_c, v_b) (v_c - v_b) / h in max/min form.
[[nodiscard]] double lambda_term(int i, int j, double v_center, double v_below, const ModelParams& params,
                                 const OmegaSpec& omega, const Grid& grid);

/// Third-order one-sided x difference; forward when the x drift is non-negative.
/// Throws std::out_of_range unless 3 <= i <= N-3.
[[nodiscard]] double third_order_dx(int i, int j, const FieldGrid& V, bool forward);
/// Third-order backward z difference. Throws std::out_of_range unless j >= 3.
[[nodiscard]] double third_order_dz(int i, int j, const FieldGrid& V);

struct ThirdOrderDiffs {
    double dx;
    double dz;
};
[[nodiscard]] ThirdOrderDiffs third_order_diffs(int i, int j, const FieldGrid& V, bool forward_x);

/// Filtered correction G = G_x + G_z with G_* = sqrt(h) F(kappa_* (D3 - D1) / sqrt(h)).
/// Components whose stencil would leave the grid (i < 3, i > N-3, j < 3) are 0.
[[nodiscard]] double filtered_correction(int i, int j, const FieldGrid& V, const ModelParams& params,
                                         const OmegaSpec& omega, const Grid& grid,
                                         FilterFn filter = &standard_filter);

/// Relaxes row j of V in place until converged. Rows below j must be final.
/// Throws NonConvergenceError after config.max_iters sweeps.
RowReport relax_row(int j, FieldGrid& V, const Problem& problem, const SchemeConfig& config);

/// Cascading solve of all rows j = 0..N.
[[nodiscard]] Solution solve(const Problem& problem, const SchemeConfig& config);

/// Direct row-by-row tridiagonal solve of the linear monotone system.
/// Throws std::domain_error on a vanishing pivot (possible only for eta = 0).
[[nodiscard]] FieldGrid solve_linear_direct(const ModelParams& params, const BoundarySpec& boundary,
                                            const Grid& grid, double eta);

}  // namespace jhit::fd
