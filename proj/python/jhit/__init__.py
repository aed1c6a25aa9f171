"""Boundary-hitting statistics of a Jacobi diffusion with a decaying drift."""

from ._core import (
    BoundarySpec,
    ModelParams,
    NonConvergenceError,
    OmegaSpec,
    boundary_f,
    diffusion,
    drift,
    estimate_V,
    exact_Z,
    fichera,
    fichera_flip_on_x1,
    monotonicity_report,
    norms,
    omega_bar,
    omega_eval,
    probe,
    rates,
    rho,
    simulate_path,
    solve,
    solve_linear_direct,
)

__all__ = [
    "BoundarySpec",
    "ModelParams",
    "NonConvergenceError",
    "OmegaSpec",
    "boundary_f",
    "diffusion",
    "drift",
    "estimate_V",
    "exact_Z",
    "fichera",
    "fichera_flip_on_x1",
    "monotonicity_report",
    "norms",
    "omega_bar",
    "omega_eval",
    "probe",
    "rates",
    "rho",
    "simulate_path",
    "solve",
    "solve_linear_direct",
]
