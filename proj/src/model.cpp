#include "jhit/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jhit {

namespace {

constexpr double kOnBoundaryTol = 1e-12;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

bool finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

// 2 delta z - delta + c^2/2; vanishes exactly at z = rho.
double ramp_argument(double z, const ModelParams& p) {
    return 2.0 * p.delta * z - p.delta + 0.5 * p.c * p.c;
}

}  // namespace

void ModelParams::validate() const {
    if (!finite_all({delta, c, R, eta})) fail("model parameters must be finite");
    if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
    if (!(c > 0.0)) fail("c must be positive");
    if (!(R > 0.0)) fail("R must be positive");
    if (!(eta >= 0.0)) fail("eta must be non-negative");
    const double c2 = c * c;
    if (!(2.0 * (1.0 - delta) > c2)) {
        std::ostringstream os;
        os << "2(1 - delta) > c^2 violated (delta=" << delta << ", c=" << c << ")";
        fail(os.str());
    }
    if (!(2.0 * delta > c2)) {
        std::ostringstream os;
        os << "2 delta > c^2 violated (delta=" << delta << ", c=" << c << ")";
        fail(os.str());
    }
}

void OmegaSpec::validate() const {
    if (kind != Kind::Linear && !(kappa > 0.0 && std::isfinite(kappa)))
        fail("kappa must be positive and finite");
}

BoundarySpec BoundarySpec::tabulated(std::vector<double> z, std::vector<double> f) {
    BoundarySpec spec{Kind::Tabulated, std::move(z), std::move(f)};
    spec.validate();
    return spec;
}

void BoundarySpec::validate() const {
    if (kind != Kind::Tabulated) return;
    if (z_knots.empty() || z_knots.size() != f_knots.size())
        fail("tabulated boundary data needs matching, non-empty z and f knots");
    for (std::size_t k = 0; k < z_knots.size(); ++k) {
        if (!std::isfinite(z_knots[k]) || !std::isfinite(f_knots[k]))
            fail("tabulated boundary data must be finite");
        if (k > 0 && !(z_knots[k] > z_knots[k - 1]))
            fail("tabulated z knots must be strictly increasing");
    }
}

std::string_view to_string(OmegaSpec::Kind kind) {
    switch (kind) {
        case OmegaSpec::Kind::Linear: return "linear";
        case OmegaSpec::Kind::Tanh: return "tanh";
        case OmegaSpec::Kind::ShiftedTanh: return "shifted-tanh";
    }
    return "?";
}

std::string_view to_string(BoundarySpec::Kind kind) {
    switch (kind) {
        case BoundarySpec::Kind::F1: return "f1";
        case BoundarySpec::Kind::F2: return "f2";
        case BoundarySpec::Kind::F3: return "f3";
        case BoundarySpec::Kind::Tabulated: return "tabulated";
    }
    return "?";
}

double rho(const ModelParams& params) {
    params.validate();
    return 0.5 - params.c * params.c / (4.0 * params.delta);
}

Drift drift(double x, double z, double omega_value, const ModelParams& params) {
    return {params.x_drift(x, z), -params.z_decay(z) * omega_value};
}

double diffusion(double x, const ModelParams& params) {
    return params.c * std::sqrt(std::max(0.0, x * (1.0 - x)));
}

double omega_eval(const OmegaSpec& spec, double v) {
    switch (spec.kind) {
        case OmegaSpec::Kind::Linear: return 1.0;
        case OmegaSpec::Kind::Tanh: return 0.5 * (1.0 + std::tanh(v / spec.kappa));
        case OmegaSpec::Kind::ShiftedTanh: return 0.5 * (1.0 + std::tanh((v - 0.5) / spec.kappa));
    }
    return 1.0;
}

double omega_bar(const OmegaSpec& spec, double v_center, double v_below) {
    return v_center >= v_below ? omega_eval(spec, v_center) : omega_eval(spec, v_below);
}

double boundary_f(const BoundarySpec& spec, double z, const ModelParams& params) {
    if (!(z >= 0.0 && z <= 1.0)) fail("boundary_f: z must lie in [0, 1]");
    switch (spec.kind) {
        case BoundarySpec::Kind::F1: return 1.0;
        case BoundarySpec::Kind::F2:
            return std::min(1.0, std::max(0.0, 10.0 * ramp_argument(z, params)));
        case BoundarySpec::Kind::F3: {
            const double r = std::max(ramp_argument(z, params), 0.0);
            return r * r;
        }
        case BoundarySpec::Kind::Tabulated: {
            const auto& zs = spec.z_knots;
            const auto& fs = spec.f_knots;
            if (z <= zs.front()) return fs.front();
            if (z >= zs.back()) return fs.back();
            const auto hi = static_cast<std::size_t>(std::upper_bound(zs.begin(), zs.end(), z) - zs.begin());
            const std::size_t lo = hi - 1;
            const double t = (z - zs[lo]) / (zs[hi] - zs[lo]);
            return fs[lo] + t * (fs[hi] - fs[lo]);
        }
    }
    return 0.0;
}

FicheraResult fichera(double x, double z, std::pair<double, double> inward_normal,
                      const ModelParams& params) {
    const bool on_x_edge = std::abs(x) <= kOnBoundaryTol || std::abs(x - 1.0) <= kOnBoundaryTol;
    const bool on_z_edge = std::abs(z) <= kOnBoundaryTol || std::abs(z - 1.0) <= kOnBoundaryTol;
    const bool inside = x >= -kOnBoundaryTol && x <= 1.0 + kOnBoundaryTol && z >= -kOnBoundaryTol &&
                        z <= 1.0 + kOnBoundaryTol;
    if (!inside || !(on_x_edge || on_z_edge)) fail("fichera: point is not on the boundary of the unit square");

    const auto [n1, n2] = inward_normal;
    // b - div(a): only a11 = c^2 x(1-x)/2 is nonzero, d a11/dx = c^2 (1 - 2x)/2.
    const double bx = params.x_drift(x, z) - 0.5 * params.c * params.c * (1.0 - 2.0 * x);
    const double bz = -params.z_decay(z);
    const double value = bx * n1 + bz * n2;
    // Normal diffusion a11 n1^2 vanishes on every edge, so the sign alone decides.
    return {value, value < 0.0};
}

double fichera_flip_on_x1(const ModelParams& params, double tol) {
    params.validate();
    auto required = [&](double z) { return fichera(1.0, z, {-1.0, 0.0}, params).bc_required; };
    if (!required(1.0)) return 1.0;
    if (required(0.0)) return 0.0;
    double lo = 0.0;  // not required
    double hi = 1.0;  // required
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (required(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double exact_Z(double t, double z0, const ModelParams& params) {
    if (!(t >= 0.0)) fail("exact_Z: t must be non-negative");
    if (!(z0 >= 0.0 && z0 <= 1.0)) fail("exact_Z: z0 must lie in [0, 1]");
    const double alpha = 2.0 * params.delta * params.R;
    const double beta = 2.0 * params.delta / (1.0 - params.delta);
    const double decay = std::exp(-alpha * t);
    return z0 * decay / (1.0 + beta * z0 * (-std::expm1(-alpha * t)));
}

}  // namespace jhit
