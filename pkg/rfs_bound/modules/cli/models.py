"""
Pydantic модели для модуля cli.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from rfs_bound.core.constants import HARD_SCAN_CAP, PRUNE_EPS_MAX
from rfs_bound.modules.scenarios import ScenarioSpec


class Mode(str, Enum):
    """Режим запуска (подкоманда CLI)."""
    RFS_BOUND = "rfs"
    ENUM_PCRLB = "enum"
    COMPARE = "compare"
    MONTE_CARLO = "mc"


class ExportFormat(str, Enum):
    CSV = "csv"
    XLSX = "xlsx"


class RunConfig(BaseModel):
    """Полностью разрешённая конфигурация одного запуска."""

    model_config = ConfigDict(frozen=True)

    mode: Mode = Mode.RFS_BOUND
    scenario: ScenarioSpec
    k_max: int = Field(..., ge=1, le=HARD_SCAN_CAP)
    prune_eps: float = Field(default=0.0, ge=0.0, le=PRUNE_EPS_MAX)
    output_path: Optional[Path] = None
    export_format: ExportFormat = ExportFormat.CSV
    seed: int = Field(default=0, ge=0)
    runs: int = Field(default=100, ge=1)
    particles: Optional[int] = Field(default=None, ge=10)
    threshold: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    def default_filename(self) -> str:
        return f"{self.mode.value}_{self.scenario.name}.{self.export_format.value}"

    def manifest_dict(self) -> dict[str, Any]:
        """Конфигурация для manifest (JSON-совместимая)."""
        data = self.model_dump(mode="json", exclude={"output_path"})
        data["output_path"] = str(self.output_path) if self.output_path else None
        return data


class RunOutcome(BaseModel):
    """Результат запуска: записанные файлы и сводка."""

    model_config = ConfigDict(frozen=True)

    table_path: Path
    manifest_path: Path
    rows: int
    wall_time_s: float
