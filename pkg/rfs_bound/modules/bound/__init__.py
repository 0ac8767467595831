"""
Граница RFS, ENUM PCRLB и извлечение RMSE.

Публичный API:
    - rfs_bound_series, enum_pcrlb_series, compare_series
    - bound_empty_branch, bound_detection_branch, total_bound, rmse_components
    - assemble_layer, assemble_enum_layer, estimate_layer_bytes
    - Branch, BoundLayer, ScanBound, BoundSeries, ComparisonSeries, BranchStats
"""

from .models import (
    BRANCH_ORDER,
    BoundLayer,
    BoundSeries,
    Branch,
    BranchStats,
    ComparisonSeries,
    ScanBound,
)
from .service import (
    assemble_enum_layer,
    assemble_layer,
    bound_detection_branch,
    bound_empty_branch,
    compare_series,
    enum_pcrlb_series,
    estimate_layer_bytes,
    rfs_bound_series,
    rmse_components,
    total_bound,
)

__all__ = [
    # Models
    "BRANCH_ORDER",
    "BoundLayer",
    "BoundSeries",
    "Branch",
    "BranchStats",
    "ComparisonSeries",
    "ScanBound",
    # Series
    "compare_series",
    "enum_pcrlb_series",
    "rfs_bound_series",
    # Per-node
    "assemble_enum_layer",
    "assemble_layer",
    "bound_detection_branch",
    "bound_empty_branch",
    "estimate_layer_bytes",
    "rmse_components",
    "total_bound",
]
