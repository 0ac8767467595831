"""
rfs-bound: рекурсивная граница ошибки для одиночной цели с Bernoulli RFS
состоянием и наблюдением при P_d < 1.

Запуск:
    python -m rfs_bound compare --scenario linear --pd 0.8
"""

__version__ = "0.1.0"
