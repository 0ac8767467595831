"""
Сценарии экспериментов: линейный CV и пеленгационный.

Публичный API:
    - linear_default, bearings_default, scenario_by_name, with_overrides
    - scan_models, prior_cov
    - ScenarioSpec, ScenarioKind
"""

from .models import ScenarioKind, ScenarioSpec
from .service import (
    PARAM_KEYS,
    bearings_default,
    linear_default,
    prior_cov,
    scan_models,
    scenario_by_name,
    with_overrides,
)

__all__ = [
    "ScenarioKind",
    "ScenarioSpec",
    "PARAM_KEYS",
    "bearings_default",
    "linear_default",
    "prior_cov",
    "scan_models",
    "scenario_by_name",
    "with_overrides",
]
