"""
Дерево последовательностей наблюдений Θ_{k,n} и скалярные рекурсии.

Публичный API:
    - init_layer, advance, gamma, prune_layer, build_layers
    - brute_force_layer: независимый оракул для малых k
    - PatternIndex, SequenceLayer
"""

from .models import PatternIndex, SequenceLayer
from .oracle import MAX_ORACLE_SCANS, brute_force_layer
from .service import advance, build_layers, gamma, gamma_after_empty, init_layer, prune_layer

__all__ = [
    "PatternIndex",
    "SequenceLayer",
    "MAX_ORACLE_SCANS",
    "brute_force_layer",
    "advance",
    "build_layers",
    "gamma",
    "gamma_after_empty",
    "init_layer",
    "prune_layer",
]
