"""
Рекурсии вероятностей дерева последовательностей наблюдений.

    Pr(Θ_{k+1,n})              - вероятность последовательности
    p(Z_{k+1}=∅ | Θ_{k,n})     - условная вероятность пустого наблюдения (Γ)
    ρ_{k+1,n}                  - масса "цели нет" при пустой истории
"""

import numpy as np

from rfs_bound.core.constants import PROBABILITY_TOL
from rfs_bound.core.exceptions import DomainError
from rfs_bound.core.logger import get_logger
from rfs_bound.modules.models import BernoulliParams

from .models import SequenceLayer

logger = get_logger(__name__)


def gamma(p_prev: float, params: BernoulliParams, last_was_detection: bool) -> float:
    """
    Оператор Γ: p(Z_{k+1}=∅ | Θ_{k,n}) по p(Z_k=∅ | Θ_{k-1,n}).

    Args:
        p_prev: условная вероятность пустого наблюдения на предыдущем шаге
        params: параметры Bernoulli RFS
        last_was_detection: последнее наблюдение непустое

    Returns:
        вероятность в [1 - P_d, 1]

    Raises:
        DomainError: p_prev вне [1 - P_d, 1] больше чем на 1e-12
    """
    pd, r = params.pd, params.r
    if last_was_detection:
        return 1.0 - r * pd

    if p_prev < 1.0 - pd - PROBABILITY_TOL or p_prev > 1.0 + PROBABILITY_TOL:
        raise DomainError(
            f"p_prev={p_prev!r} outside [{1.0 - pd!r}, 1]",
            details={"p_prev": p_prev, "pd": pd},
        )
    value = 1.0 - r * pd + pd * (2.0 * r - 1.0) * (p_prev - (1.0 - pd)) / (pd * p_prev)
    return float(min(1.0, max(1.0 - pd, value)))


def gamma_after_empty(p_prev: np.ndarray, params: BernoulliParams) -> np.ndarray:
    """Векторный Γ для последовательностей, оканчивающихся пустым наблюдением."""
    pd, r = params.pd, params.r
    p = np.asarray(p_prev, dtype=np.float64)
    if p.size and (p.min() < 1.0 - pd - PROBABILITY_TOL or p.max() > 1.0 + PROBABILITY_TOL):
        raise DomainError(f"p_prev outside [{1.0 - pd!r}, 1]")
    value = 1.0 - r * pd + pd * (2.0 * r - 1.0) * (p - (1.0 - pd)) / (pd * p)
    return np.clip(value, 1.0 - pd, 1.0)


def init_layer(params: BernoulliParams) -> SequenceLayer:
    """
    Слой k = 1: коды 0 (пусто) и 1 (обнаружение).

    Pr = [1 - b·P_d, b·P_d], ρ = [1 - b, 0].
    """
    b, pd = params.b, params.pd
    prob_empty = 1.0 - b * pd
    return SequenceLayer(
        k=1,
        codes=np.array([0, 1]),
        prob=np.array([prob_empty, b * pd]),
        p_empty_next=np.array(
            [
                gamma(prob_empty, params, last_was_detection=False),
                gamma(prob_empty, params, last_was_detection=True),
            ]
        ),
        rho=np.array([1.0 - b, 0.0]),
    )


def advance(layer: SequenceLayer, params: BernoulliParams) -> SequenceLayer:
    """
    Слой k+1 из слоя k.

    Родитель m порождает m (пустое наблюдение) и m + 2^k (обнаружение):
        Pr(m)        = Pr_m · p_m
        ρ(m)         = Pr_m · (p_m - (1 - P_d)) / P_d
        Pr(m + 2^k)  = Pr_m · (1 - p_m),   ρ = 0
    где p_m = p(Z_{k+1}=∅ | Θ_{k,m}).
    """
    pd, r = params.pd, params.r
    prob, p_empty = layer.prob, layer.p_empty_next

    empty_prob = prob * p_empty
    detected_prob = prob * (1.0 - p_empty)
    empty_rho = np.clip(prob * (p_empty - (1.0 - pd)) / pd, 0.0, empty_prob)

    return SequenceLayer(
        k=layer.k + 1,
        codes=np.concatenate([layer.codes, layer.codes + (1 << layer.k)]),
        prob=np.concatenate([empty_prob, detected_prob]),
        p_empty_next=np.concatenate(
            [gamma_after_empty(p_empty, params), np.full(layer.size, 1.0 - r * pd)]
        ),
        rho=np.concatenate([empty_rho, np.zeros(layer.size)]),
        dropped_mass=layer.dropped_mass,
    )


def prune_layer(layer: SequenceLayer, eps: float) -> SequenceLayer:
    """
    Отбрасывает последовательности с Pr < eps.

    Отброшенная масса накапливается в dropped_mass; перенормировки нет.
    """
    if eps <= 0.0:
        return layer

    keep = layer.prob >= eps
    if np.all(keep):
        return layer

    dropped = float(np.sum(layer.prob[~keep]))
    logger.debug(f"Scan {layer.k}: pruned {int(np.sum(~keep))} patterns, mass {dropped:.3e}")
    return SequenceLayer(
        k=layer.k,
        codes=layer.codes[keep],
        prob=layer.prob[keep],
        p_empty_next=layer.p_empty_next[keep],
        rho=layer.rho[keep],
        dropped_mass=layer.dropped_mass + dropped,
    )


def build_layers(params: BernoulliParams, k_max: int) -> list[SequenceLayer]:
    """Слои 1..k_max без отсечения."""
    layers = [init_layer(params)]
    while layers[-1].k < k_max:
        layers.append(advance(layers[-1], params))
    return layers
