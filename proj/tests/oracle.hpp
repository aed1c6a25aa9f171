#pragma once

// Independent dense assembly and elimination of the linear monotone system,
// used as a reference for small grids.

#include <algorithm>
#include <cmath>
#include <vector>

#include "jhit/field.hpp"
#include "jhit/model.hpp"

namespace oracle {

using namespace jhit;

// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> M, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(M[r][k]) > std::abs(M[piv][k])) piv = r;
        std::swap(M[k], M[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = M[r][k] / M[k][k];
            for (std::size_t col = k; col < n; ++col) M[r][col] -= m * M[k][col];
            rhs[r] -= m * rhs[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t col = k + 1; col < n; ++col) s -= M[k][col] * x[col];
        x[k] = s / M[k][k];
    }
    return x;
}

// Full linear monotone system on the (N+1)^2 vertices, assembled from the model directly.
inline FieldGrid brute_force(const ModelParams& p, const BoundarySpec& f, int n) {
    const double h = 1.0 / n;
    const double r = 0.5 - p.c * p.c / (4 * p.delta);
    const int m = (n + 1) * (n + 1);
    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::vector<double>> M(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (int j = 0; j <= n; ++j) {
        const double z = j * h;
        for (int i = 0; i <= n; ++i) {
            const double x = i * h;
            const int row = id(i, j);
            if (i == n && z > r + 1e-12) {
                M[row][row] = 1.0;
                rhs[row] = boundary_f(f, z, p);
                continue;
            }
            const double q = 2 * p.delta * z + 1 - p.delta - x;
            const double a = 0.5 * p.c * p.c * x * (1 - x);
            const double k = 2 * p.delta * p.R * (2 * p.delta / (1 - p.delta) * z + 1) * z;
            const double west = a / (h * h) + std::max(-q, 0.0) / h;
            const double east = a / (h * h) + std::max(q, 0.0) / h;
            const double south = k / h;
            M[row][row] = p.eta + west + east + south;
            if (i > 0) M[row][id(i - 1, j)] -= west;
            if (i < n) M[row][id(i + 1, j)] -= east;
            if (j > 0) M[row][id(i, j - 1)] -= south;
        }
    }
    return FieldGrid(n, dense_solve(M, rhs));
}

}  // namespace oracle
