"""
Командная строка: конфигурация запуска, конвейеры и экспорт.

Публичный API:
    - parse_config, build_run_config, read_config_file
    - run, execute, run_figure
    - SeriesExporter
    - RunConfig, Mode, ExportFormat, RunOutcome
"""

from .config_file import CONFIG_KEYS, ConfigEntry, build_run_config, describe_keys, parse_config, read_config_file
from .export import SeriesExporter, format_value
from .figures import FIGURE_GRIDS, run_figure
from .models import ExportFormat, Mode, RunConfig, RunOutcome
from .runner import build_rows, columns_for, execute, run, version_string

__all__ = [
    # Config
    "CONFIG_KEYS",
    "ConfigEntry",
    "build_run_config",
    "describe_keys",
    "parse_config",
    "read_config_file",
    # Export
    "SeriesExporter",
    "format_value",
    # Runs
    "FIGURE_GRIDS",
    "build_rows",
    "columns_for",
    "execute",
    "run",
    "run_figure",
    "version_string",
    # Models
    "ExportFormat",
    "Mode",
    "RunConfig",
    "RunOutcome",
]
