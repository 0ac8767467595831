"""
Запуск конвейеров по RunConfig: расчёт, таблица и manifest.
"""

import subprocess
import time
from pathlib import Path
from typing import Any, Optional

from rfs_bound import __version__
from rfs_bound.core.constants import BASE_COLUMNS, ENUM_COLUMNS, MC_COLUMNS, RMSE_COLUMNS
from rfs_bound.core.logger import get_logger
from rfs_bound.core.storage import OutputManager, get_output_manager
from rfs_bound.core.trace import get_run_id
from rfs_bound.modules.bound import BoundSeries, enum_pcrlb_series, rfs_bound_series
from rfs_bound.modules.mcval import MonteCarloResult, bound_violations, empirical_mse

from .export import Row, SeriesExporter
from .models import ExportFormat, Mode, RunConfig, RunOutcome

logger = get_logger(__name__)


def version_string() -> str:
    """`git describe` рабочей копии, иначе версия пакета."""
    try:
        result = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        )
    except (OSError, subprocess.SubprocessError):
        return __version__
    return result.stdout.strip() or __version__


def columns_for(mode: Mode) -> tuple[str, ...]:
    if mode is Mode.COMPARE:
        return BASE_COLUMNS + ENUM_COLUMNS
    if mode is Mode.MONTE_CARLO:
        return BASE_COLUMNS + MC_COLUMNS
    return BASE_COLUMNS


def _base_rows(series: BoundSeries) -> list[Row]:
    rows = []
    for scan in series.per_scan:
        row: Row = {"scan": int(scan.k), "pr_mass_kept": float(scan.kept_mass)}
        row.update({name: float(value) for name, value in zip(RMSE_COLUMNS, scan.rmse)})
        rows.append(row)
    return rows


def build_rows(
    mode: Mode,
    series: BoundSeries,
    enum: Optional[BoundSeries] = None,
    mc: Optional[MonteCarloResult] = None,
) -> list[Row]:
    """Строки таблицы по схеме режима."""
    rows = _base_rows(series)
    if mode is Mode.COMPARE and enum is not None:
        for row, scan in zip(rows, enum.per_scan):
            row.update({f"enum_{name}": float(v) for name, v in zip(RMSE_COLUMNS, scan.rmse)})
    if mode is Mode.MONTE_CARLO and mc is not None:
        rmse = mc.rmse_table()
        for i, row in enumerate(rows):
            row.update({f"mc_{name}": float(v) for name, v in zip(RMSE_COLUMNS, rmse[i])})
            row["mc_trace"] = float(mc.trace[i])
            row["mc_trace_se"] = float(mc.trace_se[i])
            row["bound_trace"] = float(series.per_scan[i].trace)
    return rows


def _branch_stats(series: BoundSeries) -> list[dict[str, int]]:
    return [{"scan": s.k, "nodes": s.nodes, **s.branches.model_dump()} for s in series.per_scan]


def execute(config: RunConfig) -> tuple[list[Row], dict[str, Any]]:
    """
    Расчёт без записи файлов.

    Returns:
        (строки таблицы, сводка для manifest)
    """
    spec = config.scenario
    summary: dict[str, Any] = {}
    enum = mc = None

    if config.mode is Mode.ENUM_PCRLB:
        series = enum_pcrlb_series(spec, config.k_max, config.prune_eps)
    else:
        series = rfs_bound_series(spec, config.k_max, config.prune_eps)
        if config.mode is Mode.COMPARE:
            enum = enum_pcrlb_series(spec, config.k_max, config.prune_eps)
        elif config.mode is Mode.MONTE_CARLO:
            mc = empirical_mse(
                spec,
                n_runs=config.runs,
                seed=config.seed,
                k_max=config.k_max,
                n_particles=config.particles,
                threshold=config.threshold,
            )
            violations = bound_violations(mc, series)
            if violations:
                logger.warning(f"MSE below bound by more than 3 SE at scans {violations}")
            summary.update(
                {
                    "diverged_runs": mc.diverged,
                    "used_runs": mc.used_runs,
                    "bound_violations": violations,
                }
            )

    summary["dropped_mass"] = series.dropped_mass
    summary["branch_stats"] = _branch_stats(series)
    return build_rows(config.mode, series, enum, mc), summary


def run(config: RunConfig, output: Optional[OutputManager] = None) -> RunOutcome:
    """
    Выполняет запуск и пишет таблицу и manifest.

    Raises:
        CapExceeded, NumericalError: ошибки расчёта
        OutputError: ошибка записи
    """
    output = output or get_output_manager()
    started = time.perf_counter()

    logger.info(f"Run {config.mode.value} on {config.scenario.name}, {config.k_max} scans")
    rows, summary = execute(config)

    columns = columns_for(config.mode)
    if config.export_format is ExportFormat.XLSX:
        payload = SeriesExporter.to_excel(rows, columns, title=f"{config.mode.value} / {config.scenario.name}")
    else:
        payload = SeriesExporter.to_csv_bytes(rows, columns)

    table_path = output.write_bytes(config.output_path or config.default_filename(), payload)
    wall_time = time.perf_counter() - started

    manifest = {
        "run_id": get_run_id(),
        "version": version_string(),
        "config": config.manifest_dict(),
        "columns": list(columns),
        "rows": len(rows),
        "wall_time_s": wall_time,
        **summary,
    }
    manifest_path = output.write_manifest(table_path, manifest)
    logger.info(f"Finished in {wall_time:.2f} s, dropped mass {summary['dropped_mass']:.3e}")

    return RunOutcome(
        table_path=table_path,
        manifest_path=manifest_path,
        rows=len(rows),
        wall_time_s=wall_time,
    )
