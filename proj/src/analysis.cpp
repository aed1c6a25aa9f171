#include "jhit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jhit::analysis {

Norms norms(const FieldGrid& a, const FieldGrid& b) {
    const FieldGrid& coarse = a.n() <= b.n() ? a : b;
    const FieldGrid& fine = a.n() <= b.n() ? b : a;
    if (fine.n() % coarse.n() != 0) throw std::invalid_argument("norms: grids are not nested");
    const int stride = fine.n() / coarse.n();
    const int n = coarse.n();
    double sum = 0.0;
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const double d = std::abs(coarse(i, j) - fine(i * stride, j * stride));
            sum += d;
            worst = std::max(worst, d);
        }
    }
    return {sum / static_cast<double>(coarse.grid().nodes()), worst};
}

std::vector<double> rates(std::span<const double> errors) {
    if (errors.size() < 2) throw std::invalid_argument("rates: need at least two errors");
    for (double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("rates: errors must be positive");
    std::vector<double> out;
    out.reserve(errors.size() - 1);
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) out.push_back(std::log2(errors[k] / errors[k + 1]));
    return out;
}

double probe(const FieldGrid& V, double x, double z) {
    if (!(x >= 0.0 && x <= 1.0 && z >= 0.0 && z <= 1.0))
        throw std::invalid_argument("probe: point outside the unit square");
    return V.interpolate(x, z);
}

MonotonicityReport monotonicity_report(const FieldGrid& V) {
    const int n = V.n();
    MonotonicityReport r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (i >= 1) {
                const double dx = V(i, j) - V(i - 1, j);
                r.min_difx = std::min(r.min_difx, dx);
                if (dx < -kMonotonicityTol) ++r.negative_difx;
            }
            if (j >= 1) {
                const double dz = V(i, j) - V(i, j - 1);
                r.min_dify = std::min(r.min_dify, dz);
                if (dz < -kMonotonicityTol) ++r.negative_dify;
            }
        }
    }
    return r;
}

std::vector<ConvergenceRow> convergence_table(std::span<const int> ns, std::span<const double> errors) {
    if (ns.size() != errors.size()) throw std::invalid_argument("convergence_table: size mismatch");
    for (std::size_t k = 1; k < ns.size(); ++k)
        if (ns[k] != 2 * ns[k - 1]) throw std::invalid_argument("convergence_table: N values must strictly double");
    std::vector<ConvergenceRow> rows;
    rows.reserve(ns.size());
    const auto r = ns.size() >= 2 ? rates(errors) : std::vector<double>{};
    for (std::size_t k = 0; k < ns.size(); ++k)
        rows.push_back({ns[k], errors[k], k < r.size() ? r[k] : std::numeric_limits<double>::quiet_NaN()});
    return rows;
}

}  // namespace jhit::analysis
