#include "jhit/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jhit {

Grid::Grid(int n) : n_(n) {
    if (n < kMinN) throw std::invalid_argument("grid resolution N must be at least " + std::to_string(kMinN));
}

FieldGrid::FieldGrid(int n, double fill) : n_(Grid(n).n()), values_(Grid(n).nodes(), fill) {}

FieldGrid::FieldGrid(int n, std::vector<double> values) : n_(Grid(n).n()), values_(std::move(values)) {
    if (values_.size() != Grid(n).nodes())
        throw std::invalid_argument("field value count does not match (N+1)^2");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
}

double FieldGrid::interpolate(double x, double z) const noexcept {
    const double sx = std::clamp(x, 0.0, 1.0) * n_;
    const double sz = std::clamp(z, 0.0, 1.0) * n_;
    const int i = std::min(static_cast<int>(sx), n_ - 1);
    const int j = std::min(static_cast<int>(sz), n_ - 1);
    const double tx = sx - i;
    const double tz = sz - j;
    // Exact at nodes: a zero weight contributes nothing.
    double v = (*this)(i, j) * (1.0 - tx) * (1.0 - tz);
    if (tx != 0.0) v += (*this)(i + 1, j) * tx * (1.0 - tz);
    if (tz != 0.0) v += (*this)(i, j + 1) * (1.0 - tx) * tz;
    if (tx != 0.0 && tz != 0.0) v += (*this)(i + 1, j + 1) * tx * tz;
    return v;
}

}  // namespace jhit
