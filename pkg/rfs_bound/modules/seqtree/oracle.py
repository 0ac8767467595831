"""
Независимый оракул: прямое суммирование по цепочке существования цели
и исходам обнаружения. Используется только в тестах и для проверки
рекурсий при малых k.
"""

import itertools

import numpy as np

from rfs_bound.core.exceptions import DomainError
from rfs_bound.modules.models import BernoulliParams

from .models import SequenceLayer

MAX_ORACLE_SCANS = 12


def _transition(params: BernoulliParams, prev: int, cur: int) -> float:
    return params.r if prev == cur else 1.0 - params.r


def _empty_likelihood(params: BernoulliParams, exists: int) -> float:
    return 1.0 - params.pd if exists else 1.0


def _conditional_empty_next(params: BernoulliParams, detections: tuple[int, ...]) -> float:
    """
    p(Z_{k+1}=∅ | Θ) перебором путей существования.

    По марковскому свойству история до последнего обнаружения не влияет
    (обнаружение означает, что цель существует), поэтому перебор
    начинается со скана последнего обнаружения.
    """
    k = len(detections)
    detected_at = [j for j, d in enumerate(detections) if d]

    numerator = denominator = 0.0
    if detected_at:
        start = detected_at[-1]
        for path in itertools.product((0, 1), repeat=k - start):
            # path[i] - существование на скане start+1+i; последний - скан k+1
            weight, prev = 1.0, 1
            for i, cur in enumerate(path):
                weight *= _transition(params, prev, cur)
                if i < len(path) - 1:
                    weight *= _empty_likelihood(params, cur)
                prev = cur
            denominator += weight
            numerator += weight * (1.0 - params.pd * path[-1])
    else:
        for path in itertools.product((0, 1), repeat=k + 1):
            weight = params.b if path[0] else 1.0 - params.b
            for i in range(1, k + 1):
                weight *= _transition(params, path[i - 1], path[i])
            for i in range(k):
                weight *= _empty_likelihood(params, path[i])
            denominator += weight
            numerator += weight * (1.0 - params.pd * path[-1])

    return numerator / denominator


def brute_force_layer(params: BernoulliParams, k: int) -> SequenceLayer:
    """
    Точный слой k суммированием совместных вероятностей.

    Значения наблюдений интегрируются: все три величины зависят только
    от шаблона обнаружений.
    """
    if not 1 <= k <= MAX_ORACLE_SCANS:
        raise DomainError(f"brute force supports 1 <= k <= {MAX_ORACLE_SCANS}, got {k}")

    size = 1 << k
    prob = np.zeros(size)
    rho = np.zeros(size)

    for existence in itertools.product((0, 1), repeat=k):
        path_weight = params.b if existence[0] else 1.0 - params.b
        for j in range(1, k):
            path_weight *= _transition(params, existence[j - 1], existence[j])
        if path_weight == 0.0:
            continue

        present = [j for j in range(k) if existence[j]]
        for outcome in itertools.product((0, 1), repeat=len(present)):
            weight = path_weight
            code = 0
            for j, detected in zip(present, outcome):
                if detected:
                    weight *= params.pd
                    code |= 1 << j
                else:
                    weight *= 1.0 - params.pd
            prob[code] += weight
            if not existence[-1]:
                rho[code] += weight

    p_empty_next = np.array(
        [
            _conditional_empty_next(params, tuple((code >> j) & 1 for j in range(k)))
            for code in range(size)
        ]
    )
    return SequenceLayer(
        k=k,
        codes=np.arange(size),
        prob=prob,
        p_empty_next=p_empty_next,
        rho=rho,
    )
