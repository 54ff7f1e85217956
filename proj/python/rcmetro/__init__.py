"""Python bindings for the rcmetro thermometry library."""

from ._core import (
    ConvergenceError,
    DomainError,
    NumericalError,
    ProbeParams,
    converge_nmax,
    convert_units,
    critical_temperature,
    dicke_snr,
    fit_scaling,
    grwa_levels,
    lambda_closed_form,
    run_sweep_csv,
    snr_exact,
    solve_lambda,
    thermal_observables,
    verify_equivalence,
    weak_snr,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "NumericalError",
    "ProbeParams",
    "converge_nmax",
    "convert_units",
    "critical_temperature",
    "dicke_snr",
    "fit_scaling",
    "grwa_levels",
    "lambda_closed_form",
    "run_sweep_csv",
    "snr_exact",
    "solve_lambda",
    "thermal_observables",
    "verify_equivalence",
    "weak_snr",
]
