"""
Файл конфигурации запуска: строки `key = value`, комментарии `#`.

Более поздние ключи переопределяют ранние; флаги CLI переопределяют файл.
"""

import re
from pathlib import Path
from typing import Any, Callable, NamedTuple, Optional

from pydantic import ValidationError

from rfs_bound.core.exceptions import ConfigError
from rfs_bound.core.logger import get_logger
from rfs_bound.modules.scenarios import ScenarioKind, scenario_by_name

from .models import ExportFormat, Mode, RunConfig

logger = get_logger(__name__)


class ConfigEntry(NamedTuple):
    value: str
    line: Optional[int]    # None - значение пришло из флага CLI


def _float_tuple(raw: str) -> tuple[float, ...]:
    return tuple(float(part) for part in raw.replace(",", " ").split())


# ключ -> (преобразование, описание для --help)
CONFIG_KEYS: dict[str, tuple[Callable[[str], Any], str]] = {
    "scenario": (str, "linear | bearings"),
    "mode": (str, "rfs | enum | compare | mc"),
    "pd": (float, "probability of detection, 0 < pd < 1"),
    "r": (float, "maintenance probability, 0 <= r <= 1"),
    "b": (float, "existence probability at scan 1, 0 <= b <= 1"),
    "scans": (int, "number of scans (hard cap 24)"),
    "e_scale": (float, "multiplier of the cardinality-mismatch errors e0 = e1"),
    "prune_eps": (float, "drop sequences with probability below eps, 0 <= eps <= 1e-3"),
    "t_step": (float, "scan interval, s"),
    "q": (float, "process noise intensity (0 = noiseless dynamics)"),
    "sensor_std": (_float_tuple, "measurement noise std: 'sx, sy' in m (linear) or 'sz' in rad (bearings)"),
    "c_r": (float, "prior position std, m"),
    "c_v": (float, "prior velocity std, m/s"),
    "target": (_float_tuple, "initial target state 'x, vx, y, vy'"),
    "ownship": (_float_tuple, "initial ownship state 'x, vx, y, vy' (bearings only)"),
    "omega": (float, "ownship turn rate, rad/s (bearings only)"),
    "seed": (int, "Monte Carlo seed"),
    "runs": (int, "Monte Carlo runs"),
    "particles": (int, "particles per filter"),
    "threshold": (float, "existence threshold of the reported estimate"),
    "out": (str, "output file path"),
    "format": (str, "csv | xlsx"),
}

# ключ конфигурации -> поле ScenarioSpec
_SCENARIO_FIELDS = {
    "pd": "pd",
    "r": "r",
    "b": "b",
    "scans": "scans",
    "e_scale": "e_scale",
    "t_step": "t_step",
    "q": "q",
    "sensor_std": "sensor_std",
    "target": "initial_target",
    "ownship": "initial_ownship",
    "omega": "omega",
}
_FIELD_TO_KEY = {field: key for key, field in _SCENARIO_FIELDS.items()}
_FIELD_TO_KEY.update({"prior_std": "c_r", "e0": "e_scale", "e1": "e_scale"})

_RUN_FIELD_TO_KEY = {
    "k_max": "scans",
    "prune_eps": "prune_eps",
    "output_path": "out",
    "export_format": "format",
    "seed": "seed",
    "runs": "runs",
    "particles": "particles",
    "threshold": "threshold",
    "mode": "mode",
}


def read_config_file(path) -> dict[str, ConfigEntry]:
    """
    Читает файл в словарь ключ -> (значение, номер строки).

    Raises:
        ConfigError: синтаксическая ошибка или неизвестный ключ
    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {file_path}: {e}") from e

    entries: dict[str, ConfigEntry] = {}
    for number, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("Expected 'key = value'", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"Unknown key '{key}'", key=key, line=number)
        entries[key] = ConfigEntry(value, number)

    logger.debug(f"Read {len(entries)} keys from {file_path}")
    return entries


def _convert(entries: dict[str, ConfigEntry]) -> dict[str, Any]:
    values = {}
    for key, entry in entries.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"Unknown key '{key}'", key=key, line=entry.line)
        converter = CONFIG_KEYS[key][0]
        try:
            values[key] = converter(entry.value)
        except ValueError as e:
            raise ConfigError(f"Invalid value '{entry.value}': {e}", key=key, line=entry.line) from e
    return values


def _validation_error(
    error: ValidationError,
    entries: dict[str, ConfigEntry],
    field_to_key: dict[str, str],
) -> ConfigError:
    first = error.errors()[0]
    message = first.get("msg", str(error))
    key = None
    for part in first.get("loc", ()):
        if part in field_to_key:
            key = field_to_key[part]
    if key is None:
        # ошибки model_validator приходят без loc: ищем имя поля в тексте
        named = [
            field_to_key[field]
            for field in sorted(field_to_key, key=len, reverse=True)
            if re.search(rf"\b{re.escape(field)}\b", message)
        ]
        given = [k for k in named if k in entries]
        key = (given or named or [None])[0]
    entry = entries.get(key) if key else None
    return ConfigError(message, key=key, line=entry.line if entry else None)


def build_run_config(entries: dict[str, ConfigEntry], mode: Optional[Mode] = None) -> RunConfig:
    """
    Собирает RunConfig из записей файла и флагов.

    Args:
        entries: ключ -> (строковое значение, строка)
        mode: режим подкоманды; переопределяет ключ `mode`

    Raises:
        ConfigError: значение вне диапазона или поле не для этого сценария
    """
    values = _convert(entries)

    name = values.get("scenario", ScenarioKind.LINEAR_CV.value)
    try:
        base = scenario_by_name(name)
    except ValueError as e:
        entry = entries.get("scenario")
        raise ConfigError(f"Unknown scenario '{name}'", key="scenario", line=entry.line if entry else None) from e

    overrides = {field: values[key] for key, field in _SCENARIO_FIELDS.items() if key in values}
    if "c_r" in values or "c_v" in values:
        overrides["prior_std"] = (
            values.get("c_r", base.prior_std[0]),
            values.get("c_v", base.prior_std[1]),
        )
    try:
        scenario = scenario_by_name(name, **overrides) if overrides else base
    except ValidationError as e:
        raise _validation_error(e, entries, _FIELD_TO_KEY) from e

    try:
        config = RunConfig(
            mode=mode or Mode(values.get("mode", Mode.RFS_BOUND.value)),
            scenario=scenario,
            k_max=scenario.scans,
            prune_eps=values.get("prune_eps", 0.0),
            output_path=values.get("out"),
            export_format=values.get("format", ExportFormat.CSV.value),
            seed=values.get("seed", 0),
            runs=values.get("runs", 100),
            particles=values.get("particles"),
            threshold=values.get("threshold"),
        )
    except ValueError as e:
        if isinstance(e, ValidationError):
            raise _validation_error(e, entries, _RUN_FIELD_TO_KEY) from e
        entry = entries.get("mode")
        raise ConfigError(str(e), key="mode", line=entry.line if entry else None) from e
    return config


def parse_config(path, overrides: Optional[dict[str, ConfigEntry]] = None, mode: Optional[Mode] = None) -> RunConfig:
    """Файл конфигурации + переопределения флагами CLI."""
    entries = read_config_file(path)
    entries.update(overrides or {})
    return build_run_config(entries, mode)


def describe_keys() -> str:
    """Список ключей для --help."""
    width = max(len(key) for key in CONFIG_KEYS)
    return "\n".join(f"  {key.ljust(width)}  {help_text}" for key, (_, help_text) in CONFIG_KEYS.items())
