"""
Pydantic модели для модуля scenarios.
"""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from rfs_bound.modules.models import BearingsScenarioModel, BernoulliParams, cv_transition
from rfs_bound.modules.numkernel import Mat, Vec


class ScenarioKind(str, Enum):
    """Тип сценария."""
    LINEAR_CV = "linear"          # CV модель, наблюдение координат
    BEARINGS_ONLY = "bearings"    # пеленгация с маневрирующего наблюдателя


class ScenarioSpec(BaseModel):
    """
    Неизменяемое описание эксперимента.

    initial_target - среднее p_0 на скане 0 для линейного сценария и
    состояние цели на скане 1 для пеленгационного.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    kind: ScenarioKind
    t_step: float = Field(..., gt=0.0)                  # с
    q: float = Field(default=0.0, ge=0.0)               # интенсивность шума процесса
    sensor_std: tuple[float, ...]                       # (σx, σy) м или (σz,) рад
    prior_std: tuple[float, float]                      # (c_r м, c_v м/с)
    initial_target: tuple[float, float, float, float]
    initial_ownship: Optional[tuple[float, float, float, float]] = None
    omega: Optional[float] = None                       # рад/с
    scans: int = Field(..., ge=1)
    e_scale: float = Field(default=1.0, gt=0.0)
    params: BernoulliParams

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "ScenarioSpec":
        bearings = self.kind is ScenarioKind.BEARINGS_ONLY
        if bearings and (self.initial_ownship is None or self.omega is None):
            raise ValueError("bearings scenario requires initial_ownship and omega")
        if not bearings and (self.initial_ownship is not None or self.omega is not None):
            raise ValueError("initial_ownship and omega apply to the bearings scenario only")
        expected = 1 if bearings else 2
        if len(self.sensor_std) != expected or min(self.sensor_std) <= 0.0:
            raise ValueError(f"sensor_std must hold {expected} positive value(s)")
        if min(self.prior_std) <= 0.0:
            raise ValueError("prior_std must be positive")
        if self.params.dim != 4:
            raise ValueError("e0/e1 must be 4-dimensional")
        return self

    @property
    def noiseless(self) -> bool:
        return self.q == 0.0

    def prior_cov(self) -> Mat:
        """diag(c_r², c_v², c_r², c_v²)."""
        c_r, c_v = self.prior_std
        return np.diag([c_r**2, c_v**2, c_r**2, c_v**2])

    def sensor_cov(self) -> Mat:
        return np.diag(np.square(self.sensor_std))

    def bearings_model(self) -> BearingsScenarioModel:
        return BearingsScenarioModel(
            omega=self.omega,
            t_step=self.t_step,
            ownship0=self.initial_ownship,
            target0=self.initial_target,
            sigma_z=self.sensor_std[0],
        )

    def nominal_state(self, k: int) -> Vec:
        """Номинальное (без шума) состояние на скане k >= 0."""
        if self.kind is ScenarioKind.BEARINGS_ONLY:
            return self.bearings_model().nominal_relative_state(k)
        f_mat = cv_transition(self.t_step)
        return np.linalg.matrix_power(f_mat, k) @ np.asarray(self.initial_target)
