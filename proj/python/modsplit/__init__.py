"""Kick-move-kick integrators of order 2, 4, 6 and 8 for separable Hamiltonians."""

from ._core import (
    ConfigError,
    FPUChain,
    HamiltonianModel,
    NumericalError,
    PhaseState,
    PushReport,
    QuadraticModel,
    QuarticOscillator,
    SchemeConfig,
    convergence_order,
    delta_G_grad_q,
    effective_grad_V,
    fpu_initial_state,
    global_error,
    integrate,
    linear_step,
    modified_coeffs_1d,
    modified_matrices,
    optimal_order,
    period_estimate,
    record_run,
    reference_trajectory,
    required_words,
    solve_push,
    step,
    word_grad_q,
    word_value,
    word_value_generic,
)

__all__ = [name for name in dir() if not name.startswith("_")]
