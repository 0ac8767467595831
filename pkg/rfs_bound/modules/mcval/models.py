"""
Pydantic модели для модуля mcval.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from rfs_bound.core.constants import PROBABILITY_TOL


class BernoulliPosterior(BaseModel):
    """
    Апостериорная плотность Bernoulli RFS в частицах.

    q_exist - вероятность существования; particles (n, d) с весами weights.
    n_particles - номинальное число частиц после ресэмплинга.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q_exist: float = Field(..., ge=0.0, le=1.0)
    particles: np.ndarray
    weights: np.ndarray
    n_particles: int = Field(..., ge=1)

    @field_validator("particles", "weights", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.asarray(value, dtype=np.float64)

    @model_validator(mode="after")
    def _check_weights(self) -> "BernoulliPosterior":
        if self.particles.shape[0] != self.weights.shape[0]:
            raise ValueError("particles and weights must have the same length")
        if np.any(self.weights < 0.0):
            raise ValueError("weights must be non-negative")
        if abs(float(np.sum(self.weights)) - 1.0) > PROBABILITY_TOL:
            raise ValueError("weights must sum to 1")
        return self

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    def effective_sample_size(self) -> float:
        return float(1.0 / np.sum(np.square(self.weights)))

    def mean(self) -> np.ndarray:
        return np.average(self.particles, weights=self.weights, axis=0)


class RunResult(BaseModel):
    """
    Один прогон Monte Carlo.

    errors[k-1] - вектор ошибки множеств на скане k; матрица ошибки
    e·eᵀ имеет ранг <= 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    run_index: int
    errors: np.ndarray                  # (scans, d)
    truth_cardinality: np.ndarray       # (scans,) 0/1
    estimate_cardinality: np.ndarray    # (scans,) 0/1
    diverged: bool = False
    diverged_at: int = 0

    def squared_errors(self) -> np.ndarray:
        return np.einsum("ki,kj->kij", self.errors, self.errors)


class MonteCarloResult(BaseModel):
    """Агрегат прогонов: средняя матрица e·eᵀ по сканам."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scenario: str
    runs: int
    used_runs: int
    diverged: int
    seed: int
    mean_error: np.ndarray              # (scans, d, d)
    trace: np.ndarray                   # (scans,)
    trace_se: np.ndarray                # (scans,)
    cardinality_error_rate: np.ndarray  # (scans,)

    @property
    def scans(self) -> int:
        return int(self.trace.shape[0])

    def rmse_table(self) -> np.ndarray:
        """(scans, d) - корень из диагонали средней матрицы ошибки."""
        return np.sqrt(np.maximum(np.einsum("kii->ki", self.mean_error), 0.0))
