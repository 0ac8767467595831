"""
Минимальная линейная алгебра над малыми квадратными матрицами.

Публичный API:
    - invert_spd, invert_spd_batch
    - outer, trace, trace_batch
    - is_psd, is_psd_batch
    - symmetrize, assert_finite
"""

from .linalg import (
    Mat,
    Vec,
    as_mat,
    as_vec,
    assert_finite,
    invert_spd,
    invert_spd_batch,
    is_psd,
    is_psd_batch,
    outer,
    symmetrize,
    trace,
    trace_batch,
)

__all__ = [
    "Mat",
    "Vec",
    "as_mat",
    "as_vec",
    "assert_finite",
    "invert_spd",
    "invert_spd_batch",
    "is_psd",
    "is_psd_batch",
    "outer",
    "symmetrize",
    "trace",
    "trace_batch",
]
