"""
Плотная линейная алгебра для малых квадратных матриц (d <= 8).

Все функции чистые: входы не изменяются, результат - новый массив.
Пакетные варианты (`*_batch`) работают с массивами формы (n, d, d).
"""

import math

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from rfs_bound.core.constants import SYMMETRY_TOL
from rfs_bound.core.exceptions import NotSpd, NumericalError

Mat = NDArray[np.float64]
Vec = NDArray[np.float64]


def as_mat(m, square: bool = True) -> Mat:
    """
    Приводит вход к float64 матрице.

    Args:
        m: матрица или скаляр/вектор-строка (при square=False)
        square: требовать d×d
    """
    arr = np.asarray(m, dtype=np.float64)
    if not square:
        arr = np.atleast_2d(arr)
    if arr.ndim != 2 or (square and arr.shape[0] != arr.shape[1]):
        raise NumericalError(f"Expected a {'square ' if square else ''}matrix, got shape {arr.shape}")
    return arr


def as_vec(v) -> Vec:
    """Приводит вход к float64 вектору."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise NumericalError(f"Expected a vector, got shape {arr.shape}")
    return arr


def assert_finite(m: NDArray, what: str = "result") -> None:
    """Проверяет отсутствие NaN/Inf."""
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"Non-finite entries in {what}")


def symmetrize(m: NDArray) -> NDArray:
    """(M + Mᵀ)/2, для одиночной матрицы или пакета."""
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def _check_symmetric(m: Mat) -> None:
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL * scale:
        raise NotSpd("Matrix is not symmetric")


def invert_spd(m) -> Mat:
    """
    Обращает симметричную положительно определённую матрицу через
    разложение Холецкого.

    Args:
        m: SPD матрица d×d

    Returns:
        m⁻¹ (симметризованная)

    Raises:
        NotSpd: ведущий элемент разложения <= 0 или матрица несимметрична
    """
    a = as_mat(m)
    assert_finite(a, "invert_spd input")
    _check_symmetric(a)
    try:
        factor = linalg.cho_factor(symmetrize(a), lower=True, check_finite=False)
    except linalg.LinAlgError as e:
        raise NotSpd(f"Cholesky factorization failed: {e}") from e

    inverse = linalg.cho_solve(factor, np.eye(a.shape[0]), check_finite=False)
    inverse = symmetrize(inverse)
    assert_finite(inverse, "invert_spd")
    return inverse


def invert_spd_batch(stack: NDArray) -> NDArray:
    """
    Пакетное обращение SPD матриц формы (n, d, d).

    Raises:
        NotSpd: хотя бы одна матрица не SPD
    """
    a = symmetrize(np.asarray(stack, dtype=np.float64))
    if a.shape[0] == 0:
        return a.copy()
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as e:
        raise NotSpd(f"Batched Cholesky factorization failed: {e}") from e

    chol_inv = np.linalg.inv(chol)
    inverse = np.swapaxes(chol_inv, -1, -2) @ chol_inv
    inverse = symmetrize(inverse)
    assert_finite(inverse, "invert_spd_batch")
    return inverse


def outer(v) -> Mat:
    """v vᵀ: симметричная PSD матрица ранга <= 1."""
    vec = as_vec(v)
    return np.outer(vec, vec)


def trace(m) -> float:
    """Сумма диагонали (компенсированное суммирование)."""
    return math.fsum(np.diag(as_mat(m)).tolist())


def trace_batch(stack: NDArray) -> NDArray:
    """Следы пакета матриц (n, d, d) -> (n,)."""
    return np.einsum("nii->n", stack)


def is_psd(m, tol: float = 0.0) -> bool:
    """
    Проверяет, что все собственные значения >= -tol.

    Порог масштабируется нормой матрицы, чтобы ошибки округления в
    больших матрицах (1e8 и выше) не давали ложных отказов.

    Args:
        m: симметричная матрица
        tol: относительный допуск

    Returns:
        True если матрица PSD в пределах допуска
    """
    a = as_mat(m)
    if not np.all(np.isfinite(a)):
        return False
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > max(tol, SYMMETRY_TOL) * scale:
        return False
    eigenvalues = linalg.eigvalsh(symmetrize(a), check_finite=False)
    return bool(eigenvalues.min() >= -tol * scale)


def is_psd_batch(stack: NDArray, tol: float = 0.0) -> bool:
    """is_psd для каждой матрицы пакета."""
    a = np.asarray(stack, dtype=np.float64)
    if a.shape[0] == 0:
        return True
    if not np.all(np.isfinite(a)):
        return False
    scale = np.maximum(1.0, np.max(np.abs(a), axis=(1, 2)))
    asym = np.max(np.abs(a - np.swapaxes(a, -1, -2)), axis=(1, 2))
    if np.any(asym > max(tol, SYMMETRY_TOL) * scale):
        return False
    eigenvalues = np.linalg.eigvalsh(symmetrize(a))
    return bool(np.all(eigenvalues.min(axis=1) >= -tol * scale))
