#pragma once

// Model layer for the Jacobi diffusion with a logistically decaying source.
//
// State (x, z) lives on the unit square. x is the Jacobi component with
// degenerate noise c*sqrt(x(1-x)); z is the normalized source, which decays
// deterministically from 1 toward 0. Boundary hitting happens only through
// x = 1 and only while z exceeds the threshold rho().

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jhit {

struct ModelParams {
    double delta = 0.5;  // amplitude, in (0, 1)
    double c = 0.4;      // noise intensity
    double R = 0.2;      // transition rate of the source
    double eta = 0.0;    // discount rate

    /// Throws std::invalid_argument unless the parameter ranges hold and the
    /// lower boundary is unreachable: 2(1 - delta) > c^2 and 2 delta > c^2.
    void validate() const;

    /// Drift-z prefactor 2 delta R (2 delta/(1 - delta) z + 1) z, i.e. |dz/dt| for omega = 1.
    [[nodiscard]] double z_decay(double z) const noexcept {
        return 2.0 * delta * R * (2.0 * delta / (1.0 - delta) * z + 1.0) * z;
    }
    /// Drift of x, 2 delta z + 1 - delta - x.
    [[nodiscard]] double x_drift(double x, double z) const noexcept {
        return 2.0 * delta * z + 1.0 - delta - x;
    }
};

/// Feedback nonlinearity omega(V) multiplying the z drift.
struct OmegaSpec {
    enum class Kind { Linear, Tanh, ShiftedTanh };
    Kind kind = Kind::Linear;
    double kappa = 0.5;

    static OmegaSpec linear() { return {}; }
    static OmegaSpec tanh(double kappa) { return {Kind::Tanh, kappa}; }
    static OmegaSpec shifted_tanh(double kappa) { return {Kind::ShiftedTanh, kappa}; }

    [[nodiscard]] bool is_linear() const noexcept { return kind == Kind::Linear; }
    void validate() const;
};

/// Dirichlet data f imposed on the reachable part of {x = 1}.
struct BoundarySpec {
    enum class Kind { F1, F2, F3, Tabulated };
    Kind kind = Kind::F1;
    // Knots for Kind::Tabulated, strictly increasing in z.
    std::vector<double> z_knots;
    std::vector<double> f_knots;

    static BoundarySpec f1() { return {Kind::F1, {}, {}}; }
    static BoundarySpec f2() { return {Kind::F2, {}, {}}; }
    static BoundarySpec f3() { return {Kind::F3, {}, {}}; }
    static BoundarySpec tabulated(std::vector<double> z, std::vector<double> f);

    void validate() const;
};

std::string_view to_string(OmegaSpec::Kind kind);
std::string_view to_string(BoundarySpec::Kind kind);

/// Threshold below which the source is too weak for x to ever reach 1:
/// rho = 1/2 - c^2 / (4 delta).
[[nodiscard]] double rho(const ModelParams& params);

struct Drift {
    double dx;
    double dz;
};

/// Drift field of the (x, z) system, with the z component scaled by omega_value.
[[nodiscard]] Drift drift(double x, double z, double omega_value, const ModelParams& params);

/// c * sqrt(max(0, x(1 - x))).
[[nodiscard]] double diffusion(double x, const ModelParams& params);

[[nodiscard]] double omega_eval(const OmegaSpec& spec, double v);

/// Upwind-selected omega: omega(v_center) if v_center >= v_below, else omega(v_below).
[[nodiscard]] double omega_bar(const OmegaSpec& spec, double v_center, double v_below);

/// Boundary data at z in [0, 1]; throws std::invalid_argument outside.
[[nodiscard]] double boundary_f(const BoundarySpec& spec, double z, const ModelParams& params);

struct FicheraResult {
    double value;
    bool bc_required;
};

/// Fichera function (b - div a) . n at a boundary point of the unit square with
/// unit inward normal n. Throws std::invalid_argument if (x, z) is not on the boundary.
[[nodiscard]] FicheraResult fichera(double x, double z, std::pair<double, double> inward_normal,
                                    const ModelParams& params);

/// Locates the sign change of the Fichera function along {x = 1} (inward
/// normal (-1, 0)) by bisection on z in [0, 1]; returns 1 if there is none.
[[nodiscard]] double fichera_flip_on_x1(const ModelParams& params, double tol = 1e-14);

/// Closed-form solution of dZ/dt = -alpha Z (beta Z + 1), alpha = 2 delta R,
/// beta = 2 delta / (1 - delta).
[[nodiscard]] double exact_Z(double t, double z0, const ModelParams& params);

}  // namespace jhit
