#pragma once

#include <span>
#include <vector>

#include "jhit/field.hpp"

namespace jhit::analysis {

struct Norms {
    double l1;    // mean absolute nodal difference
    double linf;  // max absolute nodal difference
};

/// Error norms over the vertices of the coarser of the two fields. Their
/// resolutions must be nested (the finer N a multiple of the coarser).
[[nodiscard]] Norms norms(const FieldGrid& a, const FieldGrid& b);

/// rate_k = log2(e_k / e_{k+1}) for errors on successively doubled grids.
[[nodiscard]] std::vector<double> rates(std::span<const double> errors);

/// Bilinear interpolation at (x, z); exact at vertices.
[[nodiscard]] double probe(const FieldGrid& V, double x, double z);

struct MonotonicityReport {
    double min_difx;  // min over i >= 1 of V_{i,j} - V_{i-1,j}
    double min_dify;  // min over j >= 1 of V_{i,j} - V_{i,j-1}
    long long negative_difx;
    long long negative_dify;
};

inline constexpr double kMonotonicityTol = 1e-10;

[[nodiscard]] MonotonicityReport monotonicity_report(const FieldGrid& V);

struct ConvergenceRow {
    int n;
    double error;
    double rate;  // NaN for the finest entry
};

/// Pairs errors with their resolutions and fills rates; ns must strictly double.
[[nodiscard]] std::vector<ConvergenceRow> convergence_table(std::span<const int> ns, std::span<const double> errors);

}  // namespace jhit::analysis
