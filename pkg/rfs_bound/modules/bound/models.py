"""
Pydantic модели для модуля bound.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Branch(str, Enum):
    """Выбранная ветвь границы для последовательности."""
    STAR = "star"                  # P* = e1e1ᵀ(Pr - ρ)
    DOUBLE_STAR = "double_star"    # P** = e0e0ᵀρ + J⁻¹Pr
    DETECTION = "detection"        # J⁻¹Pr


# Порядок соответствует целочисленным кодам в BoundLayer.selected_branch
BRANCH_ORDER = (Branch.STAR, Branch.DOUBLE_STAR, Branch.DETECTION)


class BranchStats(BaseModel):
    """Число узлов каждой ветви на скане."""

    model_config = ConfigDict(frozen=True)

    star: int = 0
    double_star: int = 0
    detection: int = 0


class BoundLayer(BaseModel):
    """Границы P_{k,n} всех активных последовательностей скана k."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=1)
    codes: np.ndarray
    per_seq: np.ndarray           # (n, d, d)
    selected_branch: np.ndarray   # (n,) int8, индексы в BRANCH_ORDER

    @field_validator("selected_branch", mode="before")
    @classmethod
    def _as_branch_codes(cls, value):
        return np.asarray(value, dtype=np.int8)

    def branch(self, i: int) -> Branch:
        return BRANCH_ORDER[int(self.selected_branch[i])]

    def stats(self) -> BranchStats:
        counts = np.bincount(self.selected_branch, minlength=len(BRANCH_ORDER))
        return BranchStats(star=int(counts[0]), double_star=int(counts[1]), detection=int(counts[2]))


class ScanBound(BaseModel):
    """Суммарная граница P_k на скане k."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int
    matrix: np.ndarray
    rmse: np.ndarray
    kept_mass: float = 1.0
    nodes: int = 0
    branches: BranchStats = BranchStats()

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


class BoundSeries(BaseModel):
    """Ряд границ по сканам для одного метода."""

    model_config = ConfigDict(frozen=True)

    method: str                   # "rfs" | "enum"
    scenario: str
    per_scan: list[ScanBound]

    def __len__(self) -> int:
        return len(self.per_scan)

    def rmse_table(self) -> np.ndarray:
        """(scans, 4) - RMSE по компонентам."""
        return np.stack([s.rmse for s in self.per_scan])

    def traces(self) -> np.ndarray:
        return np.array([s.trace for s in self.per_scan])

    @property
    def dropped_mass(self) -> float:
        return 1.0 - self.per_scan[-1].kept_mass if self.per_scan else 0.0


class ComparisonSeries(BaseModel):
    """RFS граница и ENUM PCRLB для одного сценария."""

    model_config = ConfigDict(frozen=True)

    rfs: BoundSeries
    enum: BoundSeries
