import math

import numpy as np
import pytest

import jhit


def test_threshold_and_fichera():
    p = jhit.ModelParams()
    assert jhit.rho(p) == pytest.approx(0.42, abs=1e-15)
    assert abs(jhit.fichera_flip_on_x1(p) - 0.42) < 1e-8
    value, required = jhit.fichera(1.0, 0.9, (-1.0, 0.0), p)
    assert required and value < 0


def test_invalid_params_raise():
    with pytest.raises(ValueError):
        jhit.ModelParams(c=1.2)


def test_solve_matches_direct():
    p = jhit.ModelParams(eta=0.1)
    V, report = jhit.solve(p, jhit.OmegaSpec.linear(), jhit.BoundarySpec.f2(), N=40)
    assert V.shape == (41, 41)
    assert len(report["rows"]) == 41
    D = jhit.solve_linear_direct(p, jhit.BoundarySpec.f2(), 40, 0.1)
    assert np.max(np.abs(V - D)) < 1e-11
    assert V[40, 40] == 1.0
    # rows with z_j <= rho are never reached
    assert np.all(V[:17, :] == 0.0)
    l1, linf = jhit.norms(V, D)
    assert linf < 1e-11
    mono = jhit.monotonicity_report(V)
    assert mono["min_dify"] >= -1e-10


def test_nonconvergence_raises():
    p = jhit.ModelParams(eta=0.1)
    with pytest.raises(jhit.NonConvergenceError):
        jhit.solve(p, jhit.OmegaSpec.linear(), jhit.BoundarySpec.f1(), N=10, max_iters=3, check_every=1)


def test_monte_carlo():
    p = jhit.ModelParams()
    est = jhit.estimate_V(1.0, 0.8, jhit.BoundarySpec.f1(), p, n_paths=100)
    assert est["mean"] == 1.0 and est["n_hits"] == 100
    est = jhit.estimate_V(0.5, 0.3, jhit.BoundarySpec.f1(), p, n_paths=200)
    assert est["mean"] == 0.0
    path = jhit.simulate_path(0.5, 0.3, p, t_max=1.0)
    assert not path["hit"]


def test_mean_field_source():
    p = jhit.ModelParams(eta=0.1)
    omega = jhit.OmegaSpec.tanh(0.5)
    V, _ = jhit.solve(p, omega, jhit.BoundarySpec.f2(), N=20)
    est = jhit.estimate_V(0.9, 1.0, jhit.BoundarySpec.f2(), p, omega=omega, field=V, n_paths=200, t_max=5.0)
    assert 0.0 <= est["mean"] <= 1.0
    assert jhit.probe(V, 1.0, 1.0) == 1.0


def test_model_functions():
    p = jhit.ModelParams()
    dx, dz = jhit.drift(0.3, 0.8, 1.0, p)
    assert dx == pytest.approx(1.0)
    assert dz == pytest.approx(-p.z_decay(0.8))
    assert jhit.diffusion(0.5, p) == pytest.approx(0.2)
    assert jhit.boundary_f(jhit.BoundarySpec.f3(), 1.0, p) == pytest.approx(0.3364)
    assert jhit.omega_bar(jhit.OmegaSpec.tanh(0.5), 0.3, 0.3) == jhit.omega_eval(jhit.OmegaSpec.tanh(0.5), 0.3)
    assert jhit.exact_Z(0.0, 0.6, p) == 0.6
    assert jhit.rates([0.4, 0.2, 0.1]) == pytest.approx([1.0, 1.0])
    assert math.isfinite(jhit.exact_Z(5.0, 0.6, p))
