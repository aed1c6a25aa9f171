#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "jhit/analysis.hpp"
#include "jhit/fd.hpp"
#include "jhit/mc.hpp"
#include "jhit/model.hpp"

namespace py = pybind11;
using namespace jhit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as (N+1, N+1) arrays indexed [j, i] (z row, x column).
Array to_numpy(const FieldGrid& field) {
    const auto side = static_cast<py::ssize_t>(field.n() + 1);
    Array out({side, side});
    std::copy(field.values().begin(), field.values().end(), out.mutable_data());
    return out;
}

FieldGrid from_numpy(const Array& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("field must be a square 2-d array");
    const int n = static_cast<int>(a.shape(0)) - 1;
    return FieldGrid(n, std::vector<double>(a.data(), a.data() + a.size()));
}

fd::Scheme scheme_from(const std::string& name) {
    if (name == "monotone") return fd::Scheme::Monotone;
    if (name == "filtered") return fd::Scheme::Filtered;
    throw std::invalid_argument("scheme must be 'monotone' or 'filtered'");
}

py::dict report_dict(const fd::SolveReport& report) {
    py::list rows;
    for (const auto& r : report.rows) {
        py::dict d;
        d["j"] = r.j;
        d["iterations"] = r.iterations;
        d["residual"] = r.residual;
        rows.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["wall_seconds"] = report.wall_seconds;
    out["total_iterations"] = report.total_iterations();
    out["max_row_iterations"] = report.max_row_iterations();
    return out;
}

mc::McConfig mc_config(long long n_paths, double dt, double t_max, std::uint64_t seed, int workers) {
    mc::McConfig cfg;
    cfg.n_paths = n_paths;
    cfg.dt = dt;
    cfg.t_max = t_max;
    cfg.seed = seed;
    cfg.workers = workers;
    return cfg;
}

mc::OmegaSource omega_source(const OmegaSpec& omega, const std::optional<Array>& field) {
    if (!field || omega.is_linear()) return mc::OmegaSource::constant();
    return mc::OmegaSource::from_field(from_numpy(*field), omega);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-difference and Monte Carlo solvers for Jacobi boundary-hitting statistics.";

    py::register_exception<fd::NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double delta, double c, double R, double eta) {
                 ModelParams p{delta, c, R, eta};
                 p.validate();
                 return p;
             }),
             py::arg("delta") = 0.5, py::arg("c") = 0.4, py::arg("R") = 0.2, py::arg("eta") = 0.0)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("c", &ModelParams::c)
        .def_readwrite("R", &ModelParams::R)
        .def_readwrite("eta", &ModelParams::eta)
        .def("validate", &ModelParams::validate)
        .def("z_decay", &ModelParams::z_decay)
        .def("x_drift", &ModelParams::x_drift)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(delta=" + std::to_string(p.delta) + ", c=" + std::to_string(p.c) +
                   ", R=" + std::to_string(p.R) + ", eta=" + std::to_string(p.eta) + ")";
        });

    py::class_<OmegaSpec>(m, "OmegaSpec")
        .def_static("linear", &OmegaSpec::linear)
        .def_static("tanh", &OmegaSpec::tanh, py::arg("kappa"))
        .def_static("shifted_tanh", &OmegaSpec::shifted_tanh, py::arg("kappa"))
        .def_readonly("kappa", &OmegaSpec::kappa)
        .def_property_readonly("kind", [](const OmegaSpec& s) { return std::string(to_string(s.kind)); });

    py::class_<BoundarySpec>(m, "BoundarySpec")
        .def_static("f1", &BoundarySpec::f1)
        .def_static("f2", &BoundarySpec::f2)
        .def_static("f3", &BoundarySpec::f3)
        .def_static("tabulated", &BoundarySpec::tabulated, py::arg("z"), py::arg("f"))
        .def_property_readonly("kind", [](const BoundarySpec& s) { return std::string(to_string(s.kind)); });

    m.def("rho", &rho, py::arg("params"));
    m.def(
        "drift",
        [](double x, double z, double omega_value, const ModelParams& p) {
            const auto d = drift(x, z, omega_value, p);
            return py::make_tuple(d.dx, d.dz);
        },
        py::arg("x"), py::arg("z"), py::arg("omega_value"), py::arg("params"));
    m.def("diffusion", &diffusion, py::arg("x"), py::arg("params"));
    m.def("omega_eval", &omega_eval, py::arg("spec"), py::arg("v"));
    m.def("omega_bar", &omega_bar, py::arg("spec"), py::arg("v_center"), py::arg("v_below"));
    m.def("boundary_f", &boundary_f, py::arg("spec"), py::arg("z"), py::arg("params"));
    m.def(
        "fichera",
        [](double x, double z, std::pair<double, double> normal, const ModelParams& p) {
            const auto r = fichera(x, z, normal, p);
            return py::make_tuple(r.value, r.bc_required);
        },
        py::arg("x"), py::arg("z"), py::arg("inward_normal"), py::arg("params"));
    m.def("fichera_flip_on_x1", &fichera_flip_on_x1, py::arg("params"), py::arg("tol") = 1e-14);
    m.def("exact_Z", &exact_Z, py::arg("t"), py::arg("z0"), py::arg("params"));

    m.def(
        "solve",
        [](const ModelParams& params, const OmegaSpec& omega, const BoundarySpec& boundary, int n,
           const std::string& scheme, double w, double tol, int check_every, long long max_iters,
           double initial_value) {
            fd::SchemeConfig cfg;
            cfg.scheme = scheme_from(scheme);
            cfg.w = w;
            cfg.tol = tol;
            cfg.check_every = check_every;
            cfg.max_iters = max_iters;
            cfg.initial_value = initial_value;
            fd::Solution sol = [&] {
                py::gil_scoped_release release;
                return fd::solve({params, omega, boundary, n}, cfg);
            }();
            return py::make_tuple(to_numpy(sol.field), report_dict(sol.report));
        },
        py::arg("params"), py::arg("omega"), py::arg("boundary"), py::arg("N") = 100,
        py::arg("scheme") = "monotone", py::arg("w") = 0.5, py::arg("tol") = 1e-12, py::arg("check_every") = 100,
        py::arg("max_iters") = 1'000'000, py::arg("initial_value") = 0.0,
        "Cascading relaxation solve. Returns (V, report) with V[j, i] = V(x_i, z_j).");
    m.def(
        "solve_linear_direct",
        [](const ModelParams& params, const BoundarySpec& boundary, int n, double eta) {
            return to_numpy(fd::solve_linear_direct(params, boundary, Grid(n), eta));
        },
        py::arg("params"), py::arg("boundary"), py::arg("N"), py::arg("eta"));

    m.def(
        "estimate_V",
        [](double x0, double z0, const BoundarySpec& boundary, const ModelParams& params, const OmegaSpec& omega,
           std::optional<Array> field, long long n_paths, double dt, double t_max, std::uint64_t seed,
           int workers) {
            const auto src = omega_source(omega, field);
            const auto cfg = mc_config(n_paths, dt, t_max, seed, workers);
            mc::McEstimate est;
            {
                py::gil_scoped_release release;
                est = mc::estimate_V(x0, z0, boundary, params, src, cfg);
            }
            py::dict d;
            d["mean"] = est.mean;
            d["std_error"] = est.std_error;
            d["n_hits"] = est.n_hits;
            d["n_paths"] = est.n_paths;
            d["lower_touches"] = est.lower_touches;
            return d;
        },
        py::arg("x0"), py::arg("z0"), py::arg("boundary"), py::arg("params"), py::arg("omega") = OmegaSpec::linear(),
        py::arg("field") = py::none(), py::arg("n_paths") = 100'000, py::arg("dt") = 1e-3, py::arg("t_max") = 10.0,
        py::arg("seed") = mc::McConfig{}.seed, py::arg("workers") = 1);
    m.def(
        "simulate_path",
        [](double x0, double z0, const ModelParams& params, double dt, double t_max, std::uint64_t seed,
           std::uint64_t path_index) {
            const auto cfg = mc_config(1, dt, t_max, seed, 1);
            const auto o = mc::simulate_path(x0, z0, params, mc::OmegaSource::constant(), cfg, path_index);
            py::dict d;
            d["hit"] = o.hit;
            d["tau"] = o.tau;
            d["z_at_tau"] = o.z_at_tau;
            d["lower_touch"] = o.lower_touch;
            return d;
        },
        py::arg("x0"), py::arg("z0"), py::arg("params"), py::arg("dt") = 1e-3, py::arg("t_max") = 10.0,
        py::arg("seed") = mc::McConfig{}.seed, py::arg("path_index") = 0);

    m.def(
        "norms",
        [](const Array& a, const Array& b) {
            const auto nm = analysis::norms(from_numpy(a), from_numpy(b));
            return py::make_tuple(nm.l1, nm.linf);
        },
        py::arg("a"), py::arg("b"), "(l1, linf) over the vertices of the coarser field.");
    m.def("rates", [](const std::vector<double>& e) { return analysis::rates(e); }, py::arg("errors"));
    m.def(
        "probe", [](const Array& v, double x, double z) { return analysis::probe(from_numpy(v), x, z); },
        py::arg("V"), py::arg("x"), py::arg("z"));
    m.def(
        "monotonicity_report",
        [](const Array& v) {
            const auto r = analysis::monotonicity_report(from_numpy(v));
            py::dict d;
            d["min_difx"] = r.min_difx;
            d["min_dify"] = r.min_dify;
            d["negative_difx"] = r.negative_difx;
            d["negative_dify"] = r.negative_dify;
            return d;
        },
        py::arg("V"));
}
