"""
Модель почти постоянной скорости (CV) для состояния [x, vx, y, vy].
"""

import numpy as np

from rfs_bound.core.exceptions import DomainError
from rfs_bound.modules.numkernel import Mat


def cv_transition(t_step: float) -> Mat:
    """
    Матрица перехода F для интервала T.

    Args:
        t_step: интервал между сканами, с (T >= 0)

    Returns:
        4×4 матрица [[1,T,0,0],[0,1,0,0],[0,0,1,T],[0,0,0,1]]
    """
    if t_step < 0:
        raise DomainError(f"t_step must be non-negative, got {t_step}")
    block = np.array([[1.0, t_step], [0.0, 1.0]])
    return np.kron(np.eye(2), block)


def cv_process_noise(t_step: float, q: float) -> Mat:
    """
    Ковариация шума процесса Q = q·[[T³/3, T²/2],[T²/2, T]] по каждой оси.

    Args:
        t_step: интервал между сканами, с
        q: интенсивность шума процесса
    """
    if t_step < 0:
        raise DomainError(f"t_step must be non-negative, got {t_step}")
    if q < 0:
        raise DomainError(f"process noise intensity must be non-negative, got {q}")
    block = q * np.array(
        [
            [t_step**3 / 3.0, t_step**2 / 2.0],
            [t_step**2 / 2.0, t_step],
        ]
    )
    return np.kron(np.eye(2), block)


def position_selector() -> Mat:
    """H для наблюдения координат: [[1,0,0,0],[0,0,1,0]]."""
    return np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]])
