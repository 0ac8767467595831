"""
Pydantic модели для модуля seqtree.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from rfs_bound.core.constants import PROBABILITY_TOL
from rfs_bound.core.exceptions import DomainError


class PatternIndex(BaseModel):
    """
    Индекс последовательности наблюдений Θ_{k,n}.

    Бит j кода (j < k) равен 1, если на скане j+1 было обнаружение;
    n = code + 1. Добавление пустого скана сохраняет код, добавление
    обнаружения прибавляет 2^k.
    """

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    code: int = Field(..., ge=0)

    def model_post_init(self, __context) -> None:
        if self.code >= 1 << self.k:
            raise ValueError(f"code {self.code} out of range for k={self.k}")

    @classmethod
    def from_detections(cls, detections: list[bool]) -> "PatternIndex":
        code = sum(1 << j for j, detected in enumerate(detections) if detected)
        return cls(k=len(detections), code=code)

    @property
    def n(self) -> int:
        return self.code + 1

    def detections(self) -> tuple[bool, ...]:
        return tuple(bool((self.code >> j) & 1) for j in range(self.k))

    @property
    def last_was_detection(self) -> bool:
        return self.k > 0 and bool((self.code >> (self.k - 1)) & 1)

    def child(self, detected: bool) -> "PatternIndex":
        return PatternIndex(k=self.k + 1, code=self.code + ((1 << self.k) if detected else 0))

    def parent(self) -> "PatternIndex":
        if self.k == 0:
            raise DomainError("Root pattern has no parent")
        return PatternIndex(k=self.k - 1, code=self.code & ((1 << (self.k - 1)) - 1))


class SequenceLayer(BaseModel):
    """
    Слой дерева последовательностей на скане k.

    codes - активные коды (все 2^k без отсечения), остальные массивы
    выровнены по ним. rho для последовательностей, оканчивающихся
    обнаружением, равно 0.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=1)
    codes: np.ndarray
    prob: np.ndarray
    p_empty_next: np.ndarray
    rho: np.ndarray
    dropped_mass: float = 0.0

    @field_validator("codes", mode="before")
    @classmethod
    def _as_codes(cls, value):
        return np.asarray(value, dtype=np.int64)

    @field_validator("prob", "p_empty_next", "rho", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.asarray(value, dtype=np.float64)

    @property
    def size(self) -> int:
        return int(self.codes.shape[0])

    @property
    def kept_mass(self) -> float:
        return float(np.sum(self.prob))

    def empty_ended(self) -> np.ndarray:
        """Маска последовательностей с пустым последним наблюдением."""
        return ((self.codes >> (self.k - 1)) & 1) == 0

    def dense(self, name: str) -> np.ndarray:
        """Массив длины 2^k с нулями на месте отсечённых кодов."""
        full = np.zeros(1 << self.k)
        full[self.codes] = getattr(self, name)
        return full

    def check_invariants(self, pd: float, tol: float = PROBABILITY_TOL) -> None:
        """
        Проверяет нормировку и диапазоны.

        Raises:
            DomainError: нарушен инвариант слоя
        """
        total = self.kept_mass + self.dropped_mass
        if abs(total - 1.0) > tol:
            raise DomainError(f"Scan {self.k}: probabilities sum to {total!r}")
        if np.any(self.prob < -tol) or np.any(self.prob > 1.0 + tol):
            raise DomainError(f"Scan {self.k}: probability out of [0, 1]")
        if np.any(self.p_empty_next < 1.0 - pd - tol) or np.any(self.p_empty_next > 1.0 + tol):
            raise DomainError(f"Scan {self.k}: p_empty_next out of [1 - P_d, 1]")
        if np.any(self.rho < -tol) or np.any(self.rho > self.prob + tol):
            raise DomainError(f"Scan {self.k}: rho out of [0, Pr]")
        if np.any(self.rho[~self.empty_ended()] != 0.0):
            raise DomainError(f"Scan {self.k}: detection-ended pattern with non-zero rho")
