"""
Рекурсии информационной матрицы Фишера.

    пропуск:     J' = Q⁻¹ - Q⁻¹F[J + FᵀQ⁻¹F]⁻¹FᵀQ⁻¹  =  (F J⁻¹ Fᵀ + Q)⁻¹
    обнаружение: J' = J'_пропуск + HᵀR⁻¹H
    без шума:    J' = F⁻ᵀ J F⁻¹ (+ HᵀR⁻¹H)
"""

from typing import Optional

import numpy as np

from rfs_bound.core.constants import MAX_CONDITION
from rfs_bound.core.exceptions import NotSpd, NumericalError, SingularF
from rfs_bound.core.logger import get_logger
from rfs_bound.modules.models import ScanModel
from rfs_bound.modules.numkernel import (
    Mat,
    as_mat,
    assert_finite,
    invert_spd,
    invert_spd_batch,
    symmetrize,
)

from .models import FimLayer

logger = get_logger(__name__)


def initial_fim(prior_cov) -> Mat:
    """J_0 = P_0⁻¹ для гауссова p_0."""
    return invert_spd(prior_cov)


def _information_form_predict(j: Mat, f: Mat, q: Mat) -> Mat:
    q_inv = invert_spd(q)
    bracket = invert_spd(symmetrize(j + f.T @ q_inv @ f))
    return symmetrize(q_inv - q_inv @ f @ bracket @ f.T @ q_inv)


def _as_fims(j) -> np.ndarray:
    """Одна матрица d×d или пакет (n, d, d)."""
    arr = np.asarray(j, dtype=np.float64)
    if arr.ndim == 3 and arr.shape[1] == arr.shape[2]:
        return arr
    return as_mat(arr)


def fim_predict(j, f, q) -> Mat:
    """
    J после скана без обнаружения; j - матрица или пакет (n, d, d).

    Для обратимой J считается в ковариационной форме; для вырожденной
    (например, нулевой) - в информационной.

    Raises:
        NotSpd: Q или матрица в скобках не SPD
    """
    j, f, q = _as_fims(j), as_mat(f), as_mat(q)
    if j.ndim == 3:
        try:
            return invert_spd_batch(f @ invert_spd_batch(j) @ f.T + q)
        except NotSpd:
            logger.debug("Batched covariance-form predict failed, falling back per node")
            return np.stack([fim_predict(node, f, q) for node in j])
    try:
        j_inv = invert_spd(j)
    except NotSpd:
        return _information_form_predict(j, f, q)
    return invert_spd(symmetrize(f @ j_inv @ f.T + q))


def measurement_information(h, r) -> Mat:
    """
    HᵀR⁻¹H для H размера d_z×d (строка якобиана пеленга - 1×d).

    Raises:
        NotSpd: R не SPD
        NumericalError: размеры H и R не согласованы
    """
    h, r = as_mat(h, square=False), as_mat(r)
    if h.shape[0] != r.shape[0]:
        raise NumericalError(f"H has {h.shape[0]} rows but R is {r.shape[0]}x{r.shape[0]}")
    return symmetrize(h.T @ invert_spd(r) @ h)


def fim_update(j, f, q, h, r) -> Mat:
    """J после скана с обнаружением: fim_predict + HᵀR⁻¹H."""
    return symmetrize(fim_predict(j, f, q) + measurement_information(h, r))


def _inverse_transition(f: Mat) -> Mat:
    try:
        condition = np.linalg.cond(f)
        if not np.isfinite(condition) or condition > MAX_CONDITION:
            raise SingularF(f"Transition matrix is singular (cond={condition:.3e})")
        return np.linalg.inv(f)
    except np.linalg.LinAlgError as e:
        raise SingularF(f"Transition matrix is singular: {e}") from e


def fim_noiseless(j, f, h: Optional[Mat] = None, r: Optional[Mat] = None) -> Mat:
    """
    J при отсутствии шума процесса: F⁻ᵀ J F⁻¹, плюс HᵀR⁻¹H если
    переданы H и R (скан с обнаружением). j - матрица или пакет.

    Raises:
        SingularF: F необратима
    """
    j = _as_fims(j)
    f_inv = _inverse_transition(as_mat(f))
    result = f_inv.T @ j @ f_inv
    if h is not None and r is not None:
        result = result + measurement_information(h, r)
    result = symmetrize(result)
    assert_finite(result, "fim_noiseless")
    return result


def predict_stack(fims: np.ndarray, model: ScanModel) -> np.ndarray:
    """Пакетный fim_predict / fim_noiseless для (n, d, d)."""
    if model.noiseless:
        return fim_noiseless(fims, model.f_mat)
    return fim_predict(fims, model.f_mat, model.q_mat)


def advance_fim_layer(layer: FimLayer, model: ScanModel) -> FimLayer:
    """
    Слой k+1: код m получает прогноз, код m + 2^k - прогноз с
    информацией измерения.
    """
    predicted = predict_stack(layer.fims, model)
    # fim_update и fim_noiseless с H, R: прогноз + HᵀR⁻¹H
    updated = symmetrize(predicted + measurement_information(model.h_mat, model.r_mat))
    fims = np.concatenate([predicted, updated])
    assert_finite(fims, f"FIM layer {layer.k + 1}")
    return FimLayer(
        k=layer.k + 1,
        codes=np.concatenate([layer.codes, layer.codes + (1 << layer.k)]),
        fims=fims,
    )


def prior_layer(prior_cov) -> FimLayer:
    """Слой k = 0 из одной априорной матрицы."""
    j0 = initial_fim(prior_cov)
    return FimLayer(k=0, codes=np.array([0]), fims=j0[np.newaxis])
