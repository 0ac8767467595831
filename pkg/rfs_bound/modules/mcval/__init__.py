"""
Monte Carlo проверка границы фильтром Бернулли.

Публичный API:
    - bpf_predict, bpf_update, resample_if_needed, extract_estimate, set_error
    - simulate_run, empirical_mse, bound_violations
    - BernoulliPosterior, RunResult, MonteCarloResult
"""

from .filter import (
    bpf_predict,
    bpf_update,
    empty_posterior_absence,
    extract_estimate,
    initial_posterior,
    predicted_existence,
    resample_if_needed,
    set_error,
    systematic_resample,
)
from .models import BernoulliPosterior, MonteCarloResult, RunResult
from .service import bound_violations, empirical_mse, run_rng, simulate_run

__all__ = [
    # Models
    "BernoulliPosterior",
    "MonteCarloResult",
    "RunResult",
    # Filter
    "bpf_predict",
    "bpf_update",
    "empty_posterior_absence",
    "extract_estimate",
    "initial_posterior",
    "predicted_existence",
    "resample_if_needed",
    "set_error",
    "systematic_resample",
    # Runs
    "bound_violations",
    "empirical_mse",
    "run_rng",
    "simulate_run",
]
