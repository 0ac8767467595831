"""
Граница ошибки Bernoulli RFS и ENUM PCRLB.

Для последовательности с пустым последним наблюдением выбирается
меньшая по следу из
    P*  = e1e1ᵀ(Pr - ρ)
    P** = e0e0ᵀρ + J⁻¹Pr
(при равенстве - P**); для последовательности с обнаружением P = J⁻¹Pr.
Итоговая граница P_k - сумма по всем последовательностям.
"""

from typing import Optional, Sequence

import numpy as np

from rfs_bound.core.config import get_settings
from rfs_bound.core.constants import (
    HARD_SCAN_CAP,
    NODE_MEMORY_OVERHEAD,
    POSITION_X,
    POSITION_Y,
    PSD_TOL,
    VELOCITY_X,
    VELOCITY_Y,
)
from rfs_bound.core.exceptions import CapExceeded, NotSpd
from rfs_bound.core.logger import get_logger
from rfs_bound.modules.fim import FimLayer, advance_fim_layer, prior_layer
from rfs_bound.modules.models import BernoulliParams
from rfs_bound.modules.numkernel import (
    Mat,
    as_mat,
    invert_spd,
    invert_spd_batch,
    is_psd,
    is_psd_batch,
    outer,
    trace,
    trace_batch,
)
from rfs_bound.modules.scenarios import ScenarioSpec, scan_models
from rfs_bound.modules.seqtree import SequenceLayer, advance, init_layer, prune_layer

from .models import BRANCH_ORDER, BoundLayer, BoundSeries, Branch, ComparisonSeries, ScanBound

logger = get_logger(__name__)

_STAR = BRANCH_ORDER.index(Branch.STAR)
_DOUBLE_STAR = BRANCH_ORDER.index(Branch.DOUBLE_STAR)
_DETECTION = BRANCH_ORDER.index(Branch.DETECTION)


# ============== Одиночные узлы ==============


def bound_empty_branch(j, pr_empty: float, rho: float, params: BernoulliParams) -> tuple[Mat, Branch]:
    """
    Граница для последовательности, оканчивающейся пустым наблюдением.

    Returns:
        (матрица, ветвь); P* выбирается только при строго меньшем следе
    """
    p_star = outer(params.e1_vec) * (pr_empty - rho)
    p_double = outer(params.e0_vec) * rho + invert_spd(j) * pr_empty
    if trace(p_star) < trace(p_double):
        return p_star, Branch.STAR
    return p_double, Branch.DOUBLE_STAR


def bound_detection_branch(j, pr: float) -> Mat:
    """J⁻¹·Pr."""
    return invert_spd(j) * pr


def total_bound(layer: BoundLayer) -> Mat:
    """P_k = Σ_n P_{k,n} в порядке кодов слоя."""
    return np.add.reduce(layer.per_seq, axis=0)


STATE_ORDER = (POSITION_X, VELOCITY_X, POSITION_Y, VELOCITY_Y)


def rmse_components(p, indices: Sequence[int] = STATE_ORDER) -> np.ndarray:
    """sqrt диагональных элементов P с указанными индексами."""
    diag = np.diag(as_mat(p))[list(indices)]
    return np.sqrt(np.maximum(diag, 0.0))


# ============== Слои ==============


def assemble_layer(seq: SequenceLayer, fims: FimLayer, params: BernoulliParams) -> BoundLayer:
    """Границы всех узлов скана (пакетно)."""
    j_inv = invert_spd_batch(fims.fims)
    prob, rho = seq.prob, seq.rho
    empty = seq.empty_ended()

    e0e0, e1e1 = outer(params.e0_vec), outer(params.e1_vec)
    trace_star = np.trace(e1e1) * (prob - rho)
    trace_double = np.trace(e0e0) * rho + trace_batch(j_inv) * prob
    choose_star = empty & (trace_star < trace_double)

    per_seq = j_inv * prob[:, None, None]
    per_seq[empty] += e0e0 * rho[empty][:, None, None]
    per_seq[choose_star] = e1e1 * (prob - rho)[choose_star][:, None, None]

    branches = np.full(seq.size, _DETECTION, dtype=np.int8)
    branches[empty] = _DOUBLE_STAR
    branches[choose_star] = _STAR
    return BoundLayer(k=seq.k, codes=seq.codes, per_seq=per_seq, selected_branch=branches)


def assemble_enum_layer(seq: SequenceLayer, fims: FimLayer) -> BoundLayer:
    """ENUM: J⁻¹·Pr для каждой последовательности, без e0/e1 и ρ."""
    per_seq = invert_spd_batch(fims.fims) * seq.prob[:, None, None]
    branches = np.where(seq.empty_ended(), _DOUBLE_STAR, _DETECTION).astype(np.int8)
    return BoundLayer(k=seq.k, codes=seq.codes, per_seq=per_seq, selected_branch=branches)


# ============== Ограничения ресурсов ==============


def _check_scan_cap(k_max: int, prune_eps: float) -> None:
    settings = get_settings()
    if k_max > HARD_SCAN_CAP:
        raise CapExceeded(
            f"{k_max} scans exceed the hard cap of {HARD_SCAN_CAP}",
            details={"k_max": k_max, "cap": HARD_SCAN_CAP},
        )
    if prune_eps == 0.0 and k_max > settings.max_scans:
        raise CapExceeded(
            f"{k_max} scans exceed the configured cap of {settings.max_scans} "
            "(enable pruning or raise RFS_BOUND_MAX_SCANS)",
            details={"k_max": k_max, "cap": settings.max_scans},
        )


def estimate_layer_bytes(nodes: int, dim: int) -> int:
    """Оценка памяти на слой: (Pr, ρ, p_empty + d×d) * 8 байт с запасом."""
    return nodes * (3 + dim * dim) * 8 * NODE_MEMORY_OVERHEAD


def _check_memory(k: int, nodes: int, dim: int) -> None:
    budget = get_settings().memory_budget_mb * 1024 * 1024
    needed = estimate_layer_bytes(nodes, dim)
    if needed > budget:
        raise CapExceeded(
            f"Scan {k}: {nodes} sequence nodes need ~{needed // (1024 * 1024)} MB, "
            f"budget is {budget // (1024 * 1024)} MB",
            details={"scan": k, "nodes": nodes},
        )


# ============== Ряды ==============


def _check_layer(layer: BoundLayer, fims: FimLayer) -> None:
    fims.check_psd()
    if not is_psd_batch(layer.per_seq, PSD_TOL):
        raise NotSpd(f"Scan {layer.k}: per-sequence bound is not PSD")


def _bound_series(
    spec: ScenarioSpec,
    params: BernoulliParams,
    method: str,
    k_max: int,
    prune_eps: float,
    validate: bool,
) -> BoundSeries:
    _check_scan_cap(k_max, prune_eps)

    fim_layer = prior_layer(spec.prior_cov())
    seq: Optional[SequenceLayer] = None
    per_scan: list[ScanBound] = []

    for k in range(1, k_max + 1):
        _check_memory(k, 2 if seq is None else 2 * seq.size, params.dim)

        seq = init_layer(params) if seq is None else advance(seq, params)
        seq = prune_layer(seq, prune_eps)
        seq.check_invariants(params.pd)
        fim_layer = advance_fim_layer(fim_layer, scan_models(spec, k)).restrict(seq.codes)

        if method == "rfs":
            layer = assemble_layer(seq, fim_layer, params)
        else:
            layer = assemble_enum_layer(seq, fim_layer)
        if validate:
            _check_layer(layer, fim_layer)

        total = total_bound(layer)
        if not is_psd(total, PSD_TOL):
            raise NotSpd(f"Scan {k}: total bound is not PSD")

        stats = layer.stats()
        per_scan.append(
            ScanBound(
                k=k,
                matrix=total,
                rmse=rmse_components(total),
                kept_mass=seq.kept_mass,
                nodes=seq.size,
                branches=stats,
            )
        )
        logger.debug(
            f"[{method}] scan {k}: nodes={seq.size} trace={np.trace(total):.6g} "
            f"star={stats.star} double_star={stats.double_star}"
        )

    logger.info(
        f"[{method}] {spec.name}: {k_max} scans, {seq.size} nodes at last scan, "
        f"dropped mass {seq.dropped_mass:.3e}"
    )
    return BoundSeries(method=method, scenario=spec.name, per_scan=per_scan)


def rfs_bound_series(
    spec: ScenarioSpec,
    k_max: Optional[int] = None,
    prune_eps: float = 0.0,
    validate: bool = False,
) -> BoundSeries:
    """
    Граница RFS по сканам 1..k_max.

    Raises:
        CapExceeded: число сканов или узлов превышает лимиты
    """
    return _bound_series(spec, spec.params, "rfs", k_max or spec.scans, prune_eps, validate)


def enum_pcrlb_series(
    spec: ScenarioSpec,
    k_max: Optional[int] = None,
    prune_eps: float = 0.0,
    validate: bool = False,
) -> BoundSeries:
    """ENUM PCRLB: вероятности последовательностей для всегда существующей цели."""
    params = spec.params.certain_existence()
    return _bound_series(spec, params, "enum", k_max or spec.scans, prune_eps, validate)


def compare_series(
    spec: ScenarioSpec,
    k_max: Optional[int] = None,
    prune_eps: float = 0.0,
    validate: bool = False,
) -> ComparisonSeries:
    return ComparisonSeries(
        rfs=rfs_bound_series(spec, k_max, prune_eps, validate),
        enum=enum_pcrlb_series(spec, k_max, prune_eps, validate),
    )
