"""
Monte Carlo проверка границы: моделирование истинного Bernoulli RFS,
фильтр Бернулли и эмпирическая MSE ошибки множеств.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from rfs_bound.core.config import get_settings
from rfs_bound.core.exceptions import DegenerateWeights
from rfs_bound.core.logger import get_logger
from rfs_bound.modules.bound import BoundSeries
from rfs_bound.modules.models import sample_measurement, sample_transition
from rfs_bound.modules.scenarios import ScenarioSpec, scan_models

from .filter import (
    bpf_predict,
    bpf_update,
    extract_estimate,
    initial_posterior,
    resample_if_needed,
    set_error,
)
from .models import MonteCarloResult, RunResult

logger = get_logger(__name__)


def run_rng(seed: int, run_index: int) -> np.random.Generator:
    """Независимый поток для прогона run_index."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(run_index,)))


def simulate_run(
    spec: ScenarioSpec,
    k_max: int,
    n_particles: int,
    threshold: float,
    rng: np.random.Generator,
    run_index: int = 0,
) -> RunResult:
    """
    Один прогон: истина и фильтр стартуют со скана 0 (существование с
    вероятностью b, состояние ~ p_0), переход в скан 1 без смены
    существования.
    """
    params = spec.params
    first_step = params.model_copy(update={"r": 1.0})
    dim = params.dim

    prior_mean, prior_cov = spec.nominal_state(0), spec.prior_cov()
    truth = None
    if rng.random() < params.b:
        truth = rng.multivariate_normal(prior_mean, prior_cov, method="cholesky")
    post = initial_posterior(params.b, prior_mean, prior_cov, n_particles, rng)

    errors = np.zeros((k_max, dim))
    truth_card = np.zeros(k_max, dtype=np.int8)
    est_card = np.zeros(k_max, dtype=np.int8)

    for k in range(1, k_max + 1):
        model = scan_models(spec, k)
        step_params = first_step if k == 1 else params

        truth = sample_transition(truth, step_params, model, rng)
        z = sample_measurement(truth, params, model, rng)

        try:
            post = bpf_predict(post, step_params, model, rng)
            post = bpf_update(post, z, params, model)
        except DegenerateWeights as e:
            logger.warning(f"Run {run_index} diverged at scan {k}: {e.message}")
            return RunResult(
                run_index=run_index,
                errors=errors,
                truth_cardinality=truth_card,
                estimate_cardinality=est_card,
                diverged=True,
                diverged_at=k,
            )
        post = resample_if_needed(post, rng)

        estimate = extract_estimate(post, threshold)
        errors[k - 1] = set_error(truth, estimate, params)
        truth_card[k - 1] = truth is not None
        est_card[k - 1] = estimate is not None

    return RunResult(
        run_index=run_index,
        errors=errors,
        truth_cardinality=truth_card,
        estimate_cardinality=est_card,
    )


def empirical_mse(
    spec: ScenarioSpec,
    n_runs: int,
    seed: int,
    k_max: Optional[int] = None,
    n_particles: Optional[int] = None,
    threshold: Optional[float] = None,
    threads: Optional[int] = None,
) -> MonteCarloResult:
    """
    Средняя по прогонам матрица e·eᵀ для каждого скана.

    Прогоны независимы и выполняются в пуле потоков; результат не
    зависит от числа потоков. Разошедшиеся прогоны исключаются.

    Raises:
        ValueError: n_runs < 1
        DegenerateWeights: разошлись все прогоны
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")

    settings = get_settings()
    k_max = k_max or spec.scans
    n_particles = n_particles or settings.particles
    threshold = settings.existence_threshold if threshold is None else threshold
    workers = max(1, min(threads or settings.threads, n_runs))

    def _run(index: int) -> RunResult:
        return simulate_run(spec, k_max, n_particles, threshold, run_rng(seed, index), index)

    logger.info(f"Monte Carlo {spec.name}: {n_runs} runs, {n_particles} particles, {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(_run, range(n_runs)))

    used = [r for r in results if not r.diverged]
    diverged = len(results) - len(used)
    if diverged:
        logger.warning(f"{diverged} of {n_runs} runs diverged and were excluded")
    if not used:
        raise DegenerateWeights("All Monte Carlo runs diverged")

    errors = np.stack([r.errors for r in used])                      # (R, K, d)
    mean_error = np.einsum("rki,rkj->kij", errors, errors) / len(used)
    per_run_trace = np.sum(errors**2, axis=2)                        # (R, K)
    trace = np.mean(per_run_trace, axis=0)
    if len(used) > 1:
        trace_se = np.std(per_run_trace, axis=0, ddof=1) / np.sqrt(len(used))
    else:
        trace_se = np.zeros(k_max)
    card_mismatch = np.stack([r.truth_cardinality != r.estimate_cardinality for r in used])

    return MonteCarloResult(
        scenario=spec.name,
        runs=n_runs,
        used_runs=len(used),
        diverged=diverged,
        seed=seed,
        mean_error=mean_error,
        trace=trace,
        trace_se=trace_se,
        cardinality_error_rate=np.mean(card_mismatch, axis=0),
    )


def bound_violations(result: MonteCarloResult, series: BoundSeries, n_se: float = 3.0) -> list[int]:
    """Сканы, где MSE ниже границы больше чем на n_se стандартных ошибок."""
    bound = series.traces()[: result.scans]
    low = result.trace[: len(bound)] + n_se * result.trace_se[: len(bound)]
    return [int(k) + 1 for k in np.flatnonzero(low < bound)]
