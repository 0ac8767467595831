"""
Наборы параметров для воспроизведения графиков: каждый пункт -
отдельный запуск с собственной таблицей `fig{N}/{label}.csv`.
"""

from pathlib import Path
from typing import Any, Optional

from rfs_bound.core.exceptions import ConfigError
from rfs_bound.core.logger import get_logger
from rfs_bound.core.storage import OutputManager, get_output_manager
from rfs_bound.modules.scenarios import scenario_by_name

from .models import RunConfig, RunOutcome
from .runner import run

logger = get_logger(__name__)

_R_GRID = (1.0, 0.95, 0.9)

# номер -> (сценарий, список (метка, переопределения))
FIGURE_GRIDS: dict[int, tuple[str, list[tuple[str, dict[str, Any]]]]] = {
    1: ("linear", [(f"r{r:g}", {"pd": 0.8, "b": 1.0, "r": r}) for r in _R_GRID]),
    2: ("linear", [(f"pd{pd:g}", {"pd": pd, "b": 1.0, "r": 0.9}) for pd in (0.7, 0.9)]),
    3: ("linear", [(f"r{r:g}", {"pd": 0.8, "b": 1.0, "r": r, "e_scale": 2.0}) for r in _R_GRID]),
    5: ("bearings", [(f"r{r:g}", {"pd": 0.9, "b": 1.0, "r": r}) for r in _R_GRID]),
    6: ("bearings", [(f"r{r:g}", {"pd": 0.9, "b": 0.1, "r": r}) for r in _R_GRID]),
}


def run_figure(number: int, base: RunConfig, output: Optional[OutputManager] = None) -> list[RunOutcome]:
    """
    Запускает сетку параметров графика в режиме base.mode.

    Raises:
        ConfigError: неизвестный номер графика
    """
    if number not in FIGURE_GRIDS:
        raise ConfigError(f"Unknown figure {number}; choose from {sorted(FIGURE_GRIDS)}", key="figure")

    output = output or get_output_manager()
    scenario_name, grid = FIGURE_GRIDS[number]
    directory = Path(base.output_path).parent if base.output_path else Path(f"fig{number}")

    outcomes = []
    for label, overrides in grid:
        scenario = scenario_by_name(scenario_name, **overrides)
        config = base.model_copy(
            update={
                "scenario": scenario,
                "k_max": scenario.scans,
                "output_path": directory / f"{label}.{base.export_format.value}",
            }
        )
        logger.info(f"Figure {number}: {label}")
        outcomes.append(run(config, output))
    return outcomes
