"""
Pydantic модели для модуля fim.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from rfs_bound.core.constants import PSD_TOL
from rfs_bound.core.exceptions import NotSpd
from rfs_bound.modules.numkernel import is_psd_batch


class FimLayer(BaseModel):
    """
    Матрицы Фишера J_{k,n} всех активных последовательностей скана k.

    k = 0 - априорный слой из одной матрицы (код 0).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=0)
    codes: np.ndarray
    fims: np.ndarray  # (n, d, d)

    @field_validator("codes", mode="before")
    @classmethod
    def _as_codes(cls, value):
        return np.asarray(value, dtype=np.int64)

    @field_validator("fims", mode="before")
    @classmethod
    def _as_stack(cls, value):
        return np.asarray(value, dtype=np.float64)

    @property
    def size(self) -> int:
        return int(self.codes.shape[0])

    def restrict(self, codes: np.ndarray) -> "FimLayer":
        """Оставляет только указанные коды (порядок сохраняется)."""
        keep = np.isin(self.codes, codes)
        if np.all(keep):
            return self
        return FimLayer(k=self.k, codes=self.codes[keep], fims=self.fims[keep])

    def check_psd(self, tol: float = PSD_TOL) -> None:
        if not is_psd_batch(self.fims, tol):
            raise NotSpd(f"Scan {self.k}: Fisher information is not PSD")
