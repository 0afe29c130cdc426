"""Finite-difference PDE solvers with chunked parallel-in-time acceleration."""

from ._core import (
    BoundarySpec,
    HeatProblem,
    Propagator,
    adi_step,
    apply_dirichlet,
    burgers_step,
    chunk_error_report,
    chunk_run,
    crank_nicolson_step,
    explicit_step,
    fit_ridge,
    generate_dataset,
    heat_final_state,
    heat_solve,
    implicit_step,
    laplace_solve,
    load_propagator,
    mae,
    mse,
    numerical_propagator,
    plan_chunks,
    probe_affine,
    save_propagator,
    thomas_solve,
    verify,
)

__all__ = [
    "BoundarySpec",
    "HeatProblem",
    "Propagator",
    "adi_step",
    "apply_dirichlet",
    "burgers_step",
    "chunk_error_report",
    "chunk_run",
    "crank_nicolson_step",
    "explicit_step",
    "fit_ridge",
    "generate_dataset",
    "heat_final_state",
    "heat_solve",
    "implicit_step",
    "laplace_solve",
    "load_propagator",
    "mae",
    "mse",
    "numerical_propagator",
    "plan_chunks",
    "probe_affine",
    "save_propagator",
    "thomas_solve",
    "verify",
]
