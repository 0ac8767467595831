"""
Сценарии экспериментов и помодельные наборы матриц для каждого скана.
"""

import math
from functools import lru_cache
from typing import Any

import numpy as np

from rfs_bound.core.logger import get_logger
from rfs_bound.modules.models import (
    BernoulliParams,
    LinearGaussianModel,
    MeasurementKind,
    ScanModel,
    bearing_jacobian,
    cv_process_noise,
    cv_transition,
    position_selector,
)

from .models import ScenarioKind, ScenarioSpec

logger = get_logger(__name__)

PARAM_KEYS = ("b", "r", "pd")


def _error_vector(prior_std: tuple[float, float], e_scale: float) -> tuple[float, ...]:
    c_r, c_v = prior_std
    return tuple(e_scale * v for v in (c_r, c_v, c_r, c_v))


def with_overrides(spec: ScenarioSpec, **overrides: Any) -> ScenarioSpec:
    """
    Новый сценарий с заменёнными полями.

    Ключи b, r, pd относятся к BernoulliParams; e0/e1 пересчитываются
    из prior_std и e_scale.

    Raises:
        pydantic.ValidationError: значение вне диапазона
    """
    data = spec.model_dump()
    params = dict(data.pop("params"))
    for key in PARAM_KEYS:
        if key in overrides:
            params[key] = overrides.pop(key)
    data.update(overrides)

    error = _error_vector(tuple(data["prior_std"]), data["e_scale"])
    params["e0"] = error
    params["e1"] = error
    data["params"] = BernoulliParams(**params)
    return ScenarioSpec(**data)


def linear_default(**overrides: Any) -> ScenarioSpec:
    """
    Линейный CV сценарий: T = 5 с, q = 1e-8, σ = 25 м по обеим осям,
    c_r = 100 м, c_v = 5 м/с, 10 сканов, P_d = 0.8, b = r = 1.
    """
    prior_std = (100.0, 5.0)
    base = ScenarioSpec(
        name="linear",
        kind=ScenarioKind.LINEAR_CV,
        t_step=5.0,
        q=1e-8,
        sensor_std=(25.0, 25.0),
        prior_std=prior_std,
        initial_target=(1000.0, 10.0, 1000.0, 10.0),
        scans=10,
        params=BernoulliParams(
            b=1.0,
            r=1.0,
            pd=0.8,
            e0=_error_vector(prior_std, 1.0),
            e1=_error_vector(prior_std, 1.0),
        ),
    )
    return with_overrides(base, **overrides) if overrides else base


def bearings_default(**overrides: Any) -> ScenarioSpec:
    """
    Пеленгационный сценарий: σ_z = 1°, ω = 1.0125°/с, c_r = 10 км,
    c_v = 100 м/с, 20 сканов без шума процесса, P_d = 0.9, b = r = 1.
    """
    prior_std = (10000.0, 100.0)
    base = ScenarioSpec(
        name="bearings",
        kind=ScenarioKind.BEARINGS_ONLY,
        t_step=5.0,
        q=0.0,
        sensor_std=(math.radians(1.0),),
        prior_std=prior_std,
        initial_target=(-25000.0, 150.0, 20000.0, 100.0),
        initial_ownship=(-30000.0, 200.0, 50000.0, 0.0),
        omega=math.radians(1.0125),
        scans=20,
        params=BernoulliParams(
            b=1.0,
            r=1.0,
            pd=0.9,
            e0=_error_vector(prior_std, 1.0),
            e1=_error_vector(prior_std, 1.0),
        ),
    )
    return with_overrides(base, **overrides) if overrides else base


def scenario_by_name(name: str, **overrides: Any) -> ScenarioSpec:
    """linear | bearings."""
    kind = ScenarioKind(name)
    if kind is ScenarioKind.BEARINGS_ONLY:
        return bearings_default(**overrides)
    return linear_default(**overrides)


@lru_cache(maxsize=32)
def _linear_bundle(spec: ScenarioSpec) -> ScanModel:
    linear = LinearGaussianModel(
        f_mat=cv_transition(spec.t_step),
        q_mat=cv_process_noise(spec.t_step, spec.q),
        h_mat=position_selector(),
        r_mat=spec.sensor_cov(),
        noiseless=spec.noiseless,
    )
    return ScanModel.from_linear(
        linear,
        kind=MeasurementKind.LINEAR,
        offset=np.zeros(4),
        birth_mean=np.asarray(spec.initial_target, dtype=np.float64),
        birth_cov=spec.prior_cov(),
    )


@lru_cache(maxsize=1024)
def _bearings_bundle(spec: ScenarioSpec, k: int) -> ScanModel:
    geometry = spec.bearings_model()
    nominal = geometry.nominal_relative_state(k)
    # линеаризация пеленга в номинальной точке скана k
    linear = LinearGaussianModel(
        f_mat=geometry.transition(),
        q_mat=cv_process_noise(spec.t_step, spec.q),
        h_mat=bearing_jacobian(nominal),
        r_mat=spec.sensor_cov(),
        noiseless=spec.noiseless,
    )
    return ScanModel.from_linear(
        linear,
        offset=geometry.offset_into(k),
        kind=MeasurementKind.BEARING,
        birth_mean=nominal,
        birth_cov=spec.prior_cov(),
    )


def scan_models(spec: ScenarioSpec, k: int) -> ScanModel:
    """
    Модели перехода в скан k и наблюдения на скане k.

    Линейный сценарий не зависит от k (один и тот же объект);
    для пеленгационного H - якобиан в номинальной точке скана k.

    Raises:
        ValueError: k вне [1, spec.scans]
        OriginSingularity: номинальная траектория проходит через сенсор
    """
    if not 1 <= k <= spec.scans:
        raise ValueError(f"scan {k} outside [1, {spec.scans}]")
    if spec.kind is ScenarioKind.LINEAR_CV:
        return _linear_bundle(spec)
    return _bearings_bundle(spec, k)


def prior_cov(spec: ScenarioSpec) -> np.ndarray:
    return spec.prior_cov()
