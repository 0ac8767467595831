"""
Геометрия пеленгационного сопровождения.

Относительное состояние x = x^t - x^o = [χ, χ̇, γ, γ̇]; пеленг - угол
вектора (χ, γ), отсчитываемый от оси γ.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from rfs_bound.core.exceptions import DomainError, OriginSingularity
from rfs_bound.modules.numkernel import Mat, Vec

from .dynamics import cv_transition


def wrap_angle(angle: np.ndarray) -> np.ndarray:
    """Приводит угол к диапазону (-π, π]."""
    wrapped = np.mod(np.asarray(angle, dtype=np.float64) + np.pi, 2.0 * np.pi) - np.pi
    return np.where(wrapped == -np.pi, np.pi, wrapped)


def bearing(x_rel: np.ndarray) -> np.ndarray:
    """
    Пеленг atan2(χ, γ) в диапазоне (-π, π].

    Args:
        x_rel: относительное состояние (4,) или пакет (n, 4)

    Raises:
        OriginSingularity: χ = γ = 0
    """
    x = np.asarray(x_rel, dtype=np.float64)
    chi, gamma = x[..., 0], x[..., 2]
    if np.any((chi == 0.0) & (gamma == 0.0)):
        raise OriginSingularity("Bearing is undefined at the sensor origin")
    angle = np.arctan2(chi, gamma)
    return np.where(angle == -np.pi, np.pi, angle)


def bearing_jacobian(x_rel: np.ndarray) -> Mat:
    """
    Якобиан пеленга по относительному состоянию.

    Returns:
        строка 1×4: [γ/(χ²+γ²), 0, -χ/(χ²+γ²), 0]
    """
    x = np.asarray(x_rel, dtype=np.float64)
    chi, gamma = float(x[0]), float(x[2])
    range_sq = chi * chi + gamma * gamma
    if range_sq == 0.0:
        raise OriginSingularity("Bearing Jacobian is undefined at the sensor origin")
    return np.array([[gamma / range_sq, 0.0, -chi / range_sq, 0.0]])


def turn_matrix(omega: float, t_step: float) -> Mat:
    """
    Матрица равномерного движения по окружности с угловой скоростью ω.

    При ω -> 0 переходит в CV матрицу (через sinc, без деления на ноль).
    """
    wt = omega * t_step
    sin_over_w = t_step * np.sinc(wt / np.pi)
    one_minus_cos_over_w = t_step * np.sin(wt / 2.0) * np.sinc(wt / (2.0 * np.pi))
    cos_wt, sin_wt = np.cos(wt), np.sin(wt)
    return np.array(
        [
            [1.0, sin_over_w, 0.0, -one_minus_cos_over_w],
            [0.0, cos_wt, 0.0, -sin_wt],
            [0.0, one_minus_cos_over_w, 1.0, sin_over_w],
            [0.0, sin_wt, 0.0, cos_wt],
        ]
    )


class BearingsScenarioModel(BaseModel):
    """
    Наблюдатель (ownship) на окружности и цель с постоянной скоростью.

    Скан k = 1 соответствует начальным состояниям ownship0/target0.
    """

    model_config = ConfigDict(frozen=True)

    omega: float                              # рад/с
    t_step: float = Field(..., gt=0.0)        # с
    ownship0: tuple[float, float, float, float]
    target0: tuple[float, float, float, float]
    sigma_z: float = Field(..., gt=0.0)       # рад

    def turn_matrix(self) -> Mat:
        return turn_matrix(self.omega, self.t_step)

    def transition(self) -> Mat:
        return cv_transition(self.t_step)

    def _ownship_at(self, k: int) -> Vec:
        # k = 0 допустим: нужен для смещения U_{0,1} при переходе в первый скан
        return np.linalg.matrix_power(self.turn_matrix(), k - 1) @ np.asarray(self.ownship0)

    def ownship_state(self, k: int) -> Vec:
        """x^o_k = Θ^(k-1) x^o_1."""
        if k < 1:
            raise DomainError(f"scan index must be >= 1, got {k}")
        return self._ownship_at(k)

    def _target_at(self, k: int) -> Vec:
        return np.linalg.matrix_power(self.transition(), k - 1) @ np.asarray(self.target0)

    def target_state(self, k: int) -> Vec:
        """x^t_k = F^(k-1) x^t_1 (цель без шума процесса)."""
        if k < 1:
            raise DomainError(f"scan index must be >= 1, got {k}")
        return self._target_at(k)

    def nominal_relative_state(self, k: int) -> Vec:
        """
        x_k = x^t_k - x^o_k; k = 0 - состояние до первого скана, из
        которого F x_0 - U_{0,1} даёт x_1.
        """
        if k < 0:
            raise DomainError(f"scan index must be >= 0, got {k}")
        return self._target_at(k) - self._ownship_at(k)

    def offset_into(self, k: int) -> Vec:
        """U_{k-1,k} = x^o_k - F x^o_{k-1}."""
        return self._ownship_at(k) - self.transition() @ self._ownship_at(k - 1)

    def relative_offset(self, k: int) -> Vec:
        """U_{k,k+1}: рассогласование моделей движения наблюдателя и цели."""
        if k < 1:
            raise DomainError(f"scan index must be >= 1, got {k}")
        return self.offset_into(k + 1)

    def nominal_trajectory(self, scans: int) -> np.ndarray:
        """
        Номинальные относительные состояния сканов 1..scans по рекурсии
        x_{k+1} = F x_k - U_{k,k+1}.

        Returns:
            массив (scans, 4); строка i - скан i+1
        """
        f_mat = self.transition()
        states = np.empty((scans, 4))
        states[0] = np.asarray(self.target0) - np.asarray(self.ownship0)
        for i in range(1, scans):
            states[i] = f_mat @ states[i - 1] - self.relative_offset(i)
        return states
