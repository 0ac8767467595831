"""
Pydantic модели для модуля models.
"""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import linalg

from rfs_bound.core.exceptions import NotSpd
from rfs_bound.modules.numkernel import Vec, invert_spd, is_psd

from .geometry import bearing, wrap_angle


class MeasurementKind(str, Enum):
    """Тип функции наблюдения."""
    LINEAR = "linear"      # z = H x + v
    BEARING = "bearing"    # z = atan2(χ, γ) + v


class BernoulliParams(BaseModel):
    """
    Параметры цепочки Bernoulli RFS.

    b  - вероятность существования цели на первом скане
    r  - вероятность сохранения (и выживания, и "остаться пустым")
    pd - вероятность обнаружения, строго внутри (0, 1)
    e0 - ошибка "лишней" цели (истина пуста, оценка нет)
    e1 - ошибка пропущенной цели (истина есть, оценка пуста)
    """

    model_config = ConfigDict(frozen=True)

    b: float = Field(..., ge=0.0, le=1.0)
    r: float = Field(..., ge=0.0, le=1.0)
    pd: float = Field(..., gt=0.0, lt=1.0)
    e0: tuple[float, ...]
    e1: tuple[float, ...]

    @model_validator(mode="after")
    def _check_error_vectors(self) -> "BernoulliParams":
        if len(self.e0) != len(self.e1):
            raise ValueError("e0 and e1 must have the same dimension")
        if not all(np.isfinite(self.e0 + self.e1)):
            raise ValueError("e0 and e1 must be finite")
        return self

    @property
    def dim(self) -> int:
        return len(self.e0)

    @property
    def e0_vec(self) -> Vec:
        return np.asarray(self.e0, dtype=np.float64)

    @property
    def e1_vec(self) -> Vec:
        return np.asarray(self.e1, dtype=np.float64)

    def certain_existence(self) -> "BernoulliParams":
        """Та же модель с b = r = 1 (цель существует всё время)."""
        return self.model_copy(update={"b": 1.0, "r": 1.0})


class LinearGaussianModel(BaseModel):
    """Линейная гауссова модель: x' = F x + w, z = H x + v."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f_mat: np.ndarray
    q_mat: np.ndarray
    h_mat: np.ndarray
    r_mat: np.ndarray
    noiseless: bool = False

    @field_validator("f_mat", "q_mat", "h_mat", "r_mat", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.atleast_2d(np.asarray(value, dtype=np.float64))

    @model_validator(mode="after")
    def _check_covariances(self) -> "LinearGaussianModel":
        if not is_psd(self.q_mat, 1e-12):
            raise ValueError("q_mat must be symmetric PSD")
        try:
            invert_spd(self.r_mat)
        except NotSpd as e:
            raise ValueError(f"r_mat must be strictly PD: {e.message}") from e
        if self.noiseless and np.any(self.q_mat != 0.0):
            raise ValueError("noiseless model requires a zero q_mat")
        return self


class ScanModel(BaseModel):
    """
    Модели одного скана: переход в скан k и наблюдение на скане k.

    Для пеленгационного сценария `h_mat` - якобиан в номинальной точке,
    `offset` - U_{k-1,k} из уравнения относительного движения.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f_mat: np.ndarray
    q_mat: np.ndarray
    noiseless: bool
    h_mat: np.ndarray
    r_mat: np.ndarray
    offset: np.ndarray
    kind: MeasurementKind
    birth_mean: np.ndarray
    birth_cov: np.ndarray

    @field_validator("f_mat", "q_mat", "h_mat", "r_mat", "offset", "birth_mean", "birth_cov", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.asarray(value, dtype=np.float64)

    @classmethod
    def from_linear(
        cls,
        linear: LinearGaussianModel,
        kind: MeasurementKind,
        offset,
        birth_mean,
        birth_cov,
    ) -> "ScanModel":
        """
        Пакет скана из проверенной линейной (линеаризованной) модели:
        Q - PSD, R - строго PD, у модели без шума Q = 0.
        """
        return cls(
            f_mat=linear.f_mat,
            q_mat=linear.q_mat,
            noiseless=linear.noiseless,
            h_mat=linear.h_mat,
            r_mat=linear.r_mat,
            offset=offset,
            kind=kind,
            birth_mean=birth_mean,
            birth_cov=birth_cov,
        )

    @property
    def dim(self) -> int:
        return self.f_mat.shape[0]

    def propagate(self, x: np.ndarray) -> np.ndarray:
        """F x - U для вектора (d,) или пакета частиц (n, d)."""
        return x @ self.f_mat.T - self.offset

    def observe(self, x: np.ndarray) -> np.ndarray:
        """h(x) без шума; результат формы (..., d_z)."""
        if self.kind is MeasurementKind.BEARING:
            return bearing(x)[..., np.newaxis]
        return x @ self.h_mat.T

    def innovation(self, z: np.ndarray, x: np.ndarray) -> np.ndarray:
        """z - h(x), для пеленга с приведением к (-π, π]."""
        residual = np.asarray(z, dtype=np.float64) - self.observe(x)
        if self.kind is MeasurementKind.BEARING:
            residual = wrap_angle(residual)
        return residual

    def log_likelihood(self, z: np.ndarray, particles: np.ndarray) -> np.ndarray:
        """log ξ(z | x) для пакета частиц (n, d) -> (n,)."""
        residual = self.innovation(z, particles)
        chol = linalg.cholesky(self.r_mat, lower=True)
        whitened = linalg.solve_triangular(chol, residual.T, lower=True)
        log_det = 2.0 * np.sum(np.log(np.diag(chol)))
        d_z = self.r_mat.shape[0]
        return -0.5 * (np.sum(whitened**2, axis=0) + log_det + d_z * np.log(2.0 * np.pi))

    def sample_process_noise(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        shape = (self.dim,) if size is None else (size, self.dim)
        if self.noiseless:
            return np.zeros(shape)
        return rng.multivariate_normal(np.zeros(self.dim), self.q_mat, size=size, method="cholesky")

    def sample_measurement_noise(self, rng: np.random.Generator) -> np.ndarray:
        d_z = self.r_mat.shape[0]
        return rng.multivariate_normal(np.zeros(d_z), self.r_mat, method="cholesky")

    def sample_birth(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        """Состояние новорождённой цели ~ p_0."""
        return rng.multivariate_normal(self.birth_mean, self.birth_cov, size=size, method="cholesky")
