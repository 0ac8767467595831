"""
Стохастические сэмплеры Bernoulli RFS для Monte Carlo.

Отсутствие цели (пустое множество) представлено как None.
"""

from typing import Optional

import numpy as np

from rfs_bound.modules.numkernel import Vec

from .geometry import wrap_angle
from .schemas import BernoulliParams, MeasurementKind, ScanModel


def sample_transition(
    x_prev: Optional[Vec],
    params: BernoulliParams,
    model: ScanModel,
    rng: np.random.Generator,
) -> Optional[Vec]:
    """
    Переход Bernoulli RFS на один скан.

    Цель выживает с вероятностью r и движется как F x - U + w;
    пустое состояние остаётся пустым с вероятностью r, иначе рождается
    цель с состоянием из p_0.
    """
    u = rng.random()
    if x_prev is not None:
        if u < params.r:
            return model.propagate(np.asarray(x_prev)) + model.sample_process_noise(rng)
        return None

    if u < params.r:
        return None
    return model.sample_birth(rng)


def sample_measurement(
    x: Optional[Vec],
    params: BernoulliParams,
    model: ScanModel,
    rng: np.random.Generator,
) -> Optional[Vec]:
    """
    Наблюдение: для пустого состояния всегда пусто (ложных отметок нет),
    для цели - h(x) + v с вероятностью P_d, иначе пусто.
    """
    if x is None:
        return None
    if rng.random() >= params.pd:
        return None

    z = model.observe(np.asarray(x)) + model.sample_measurement_noise(rng)
    if model.kind is MeasurementKind.BEARING:
        z = wrap_angle(z)
    return z
