"""
Unit-тесты для границы RFS и ENUM PCRLB.
"""

import numpy as np
import pytest

from rfs_bound.core.constants import POSITION_X, POSITION_Y, VELOCITY_X, VELOCITY_Y
from rfs_bound.core.exceptions import CapExceeded
from rfs_bound.modules.bound import (
    BoundLayer,
    Branch,
    assemble_enum_layer,
    assemble_layer,
    bound_detection_branch,
    bound_empty_branch,
    enum_pcrlb_series,
    estimate_layer_bytes,
    rfs_bound_series,
    rmse_components,
    total_bound,
)
from rfs_bound.modules.fim import advance_fim_layer, fim_predict, prior_layer
from rfs_bound.modules.numkernel import is_psd
from rfs_bound.modules.scenarios import linear_default, scan_models, with_overrides
from rfs_bound.modules.seqtree import init_layer
from tests.conftest import make_params

BOUND_SERVICE = "rfs_bound.modules.bound.service"


class TestEmptyBranch:
    """Тесты для bound_empty_branch."""

    def test_certain_absence(self):
        """Тест: ρ = Pr даёт P* = 0."""
        matrix, branch = bound_empty_branch(np.eye(4), 0.3, 0.3, make_params())
        assert branch is Branch.STAR
        np.testing.assert_array_equal(matrix, np.zeros((4, 4)))

    def test_large_error_vectors(self):
        """Тест: при ρ = 0 и большом e1 выбирается J⁻¹·Pr."""
        j = np.diag([1e-4, 0.04, 1e-4, 0.04])
        matrix, branch = bound_empty_branch(j, 0.5, 0.0, make_params(e=(1e3, 50.0, 1e3, 50.0)))
        assert branch is Branch.DOUBLE_STAR
        np.testing.assert_allclose(matrix, np.diag([5e3, 12.5, 5e3, 12.5]), rtol=1e-12)

    def test_tie_goes_to_double_star(self):
        """Тест: при равенстве следов выбирается P**."""
        matrix, branch = bound_empty_branch(np.eye(4), 0.5, 0.0, make_params(e=(2.0, 0.0, 0.0, 0.0)))
        assert branch is Branch.DOUBLE_STAR
        np.testing.assert_allclose(matrix, 0.5 * np.eye(4))

    def test_first_scan_by_hand(self, linear_spec):
        """Тест: скан 1, код 0 - прямая подстановка."""
        params = make_params(b=1.0, r=0.9, pd=0.8)
        model = scan_models(linear_spec, 1)
        j = fim_predict(np.diag([1e-4, 0.04, 1e-4, 0.04]), model.f_mat, model.q_mat)

        # след прогноза 21300 > 20050, поэтому P* = e1e1ᵀ·0.2
        matrix, branch = bound_empty_branch(j, 0.2, 0.0, params)
        assert branch is Branch.STAR
        np.testing.assert_allclose(matrix, 0.2 * np.outer(params.e1_vec, params.e1_vec), rtol=1e-12)
        np.testing.assert_allclose(rmse_components(matrix), np.sqrt(0.2) * params.e1_vec, rtol=1e-12)


class TestDetectionBranch:
    """Тесты для bound_detection_branch."""

    def test_zero_probability(self):
        np.testing.assert_array_equal(bound_detection_branch(np.eye(4), 0.0), np.zeros((4, 4)))

    def test_scaled_inverse(self):
        np.testing.assert_allclose(bound_detection_branch(np.eye(4), 0.5), 0.5 * np.eye(4))


class TestTotalsAndRmse:
    """Тесты для total_bound / rmse_components."""

    def test_total_is_sum(self):
        per_seq = np.stack([np.eye(2), 2 * np.eye(2), np.diag([0.5, 0.0])])
        layer = BoundLayer(k=2, codes=np.arange(3), per_seq=per_seq, selected_branch=[0, 1, 2])
        np.testing.assert_allclose(total_bound(layer), np.diag([3.5, 3.0]))

    def test_rmse(self):
        np.testing.assert_array_equal(rmse_components(np.diag([4.0, 9.0]), indices=[0, 1]), [2.0, 3.0])
        np.testing.assert_array_equal(rmse_components(np.zeros((4, 4))), np.zeros(4))

    def test_rmse_state_order(self):
        """Тест: по умолчанию порядок [x, vx, y, vy]."""
        rmse = rmse_components(np.diag([1.0, 4.0, 9.0, 16.0]))
        assert rmse[POSITION_X] == 1.0
        assert rmse[VELOCITY_X] == 2.0
        assert rmse[POSITION_Y] == 3.0
        assert rmse[VELOCITY_Y] == 4.0

    def test_stats(self):
        layer = BoundLayer(k=2, codes=np.arange(4), per_seq=np.zeros((4, 2, 2)), selected_branch=[0, 1, 1, 2])
        stats = layer.stats()
        assert (stats.star, stats.double_star, stats.detection) == (1, 2, 1)
        assert layer.branch(3) is Branch.DETECTION


class TestAssembleLayer:
    """Тесты для пакетной сборки слоя."""

    def test_matches_per_node(self, linear_spec):
        """Тест: пакетная сборка совпадает с поузловой."""
        params = make_params(b=0.6, r=0.9, pd=0.8)
        seq = init_layer(params)
        fims = advance_fim_layer(prior_layer(linear_spec.prior_cov()), scan_models(linear_spec, 1))
        layer = assemble_layer(seq, fims, params)

        expected, branch = bound_empty_branch(fims.fims[0], seq.prob[0], seq.rho[0], params)
        np.testing.assert_allclose(layer.per_seq[0], expected, rtol=1e-12)
        assert layer.branch(0) is branch
        np.testing.assert_allclose(layer.per_seq[1], bound_detection_branch(fims.fims[1], seq.prob[1]), rtol=1e-12)
        assert layer.branch(1) is Branch.DETECTION

    def test_enum_ignores_error_vectors(self, linear_spec):
        params = make_params(pd=0.8)
        seq = init_layer(params)
        fims = advance_fim_layer(prior_layer(linear_spec.prior_cov()), scan_models(linear_spec, 1))
        layer = assemble_enum_layer(seq, fims)
        np.testing.assert_allclose(layer.per_seq[0], 0.2 * np.linalg.inv(fims.fims[0]), rtol=1e-10)
        assert layer.stats().star == 0


class TestSeries:
    """Тесты для rfs_bound_series / enum_pcrlb_series."""

    # ============== Эквивалентность с ENUM ==============

    def test_large_errors_reproduce_enum(self):
        """Тест: b = r = 1 и e_scale = 10 - RFS совпадает с ENUM на всех сканах."""
        spec = with_overrides(linear_default(), e_scale=10.0)
        rfs = rfs_bound_series(spec)
        enum = enum_pcrlb_series(spec)
        for a, b in zip(rfs.per_scan, enum.per_scan):
            np.testing.assert_allclose(a.matrix, b.matrix, rtol=1e-9, atol=1e-12)
            assert a.branches.star == 0

    def test_rfs_never_above_enum_for_certain_target(self):
        """Тест: при b = r = 1 след RFS не больше следа ENUM."""
        spec = linear_default()
        rfs, enum = rfs_bound_series(spec).traces(), enum_pcrlb_series(spec).traces()
        assert np.all(rfs <= enum * (1 + 1e-12))
        assert rfs[0] < enum[0]

    def test_doubled_errors_branch_window(self):
        """Тест: e_scale = 2 - ветвь P* не выбирается до скана 6 включительно."""
        spec = with_overrides(linear_default(), e_scale=2.0)
        series = rfs_bound_series(spec, k_max=7)
        enum = enum_pcrlb_series(spec, k_max=7)
        for k in range(6):
            assert series.per_scan[k].branches.star == 0
            np.testing.assert_allclose(series.per_scan[k].matrix, enum.per_scan[k].matrix, rtol=1e-9, atol=1e-12)
        assert series.per_scan[6].branches.star >= 1

    def test_enum_independent_of_existence(self):
        """Тест: ENUM не зависит от b и r."""
        base = enum_pcrlb_series(linear_default(), k_max=5)
        other = enum_pcrlb_series(with_overrides(linear_default(), b=0.3, r=0.7), k_max=5)
        np.testing.assert_array_equal(base.traces(), other.traces())

    def test_near_perfect_detection(self):
        """Тест: P_d -> 1 приближает границу к информации со всеми обнаружениями."""
        spec = with_overrides(linear_default(), pd=0.999999)
        enum = enum_pcrlb_series(spec, k_max=5)
        j = prior_layer(spec.prior_cov())
        for k in range(1, 6):
            j = advance_fim_layer(j, scan_models(spec, k)).restrict(np.array([(1 << k) - 1]))
        np.testing.assert_allclose(enum.per_scan[-1].matrix, np.linalg.inv(j.fims[0]), rtol=1e-4, atol=1e-6)

    # ============== Свойства ==============

    def test_error_scale_is_monotone(self):
        """Тест: увеличение e0, e1 не уменьшает след P_k."""
        spec = with_overrides(linear_default(), r=0.9)
        small = rfs_bound_series(spec).traces()
        large = rfs_bound_series(with_overrides(spec, e_scale=3.0)).traces()
        assert np.all(large >= small * (1 - 1e-12))

    def test_psd_and_mass(self):
        spec = with_overrides(linear_default(), b=0.5, r=0.9, pd=0.7)
        series = rfs_bound_series(spec, validate=True)
        assert len(series) == 10
        for scan in series.per_scan:
            assert is_psd(scan.matrix, 1e-9)
            assert scan.kept_mass == pytest.approx(1.0, abs=1e-12)
            assert not np.any(np.isnan(scan.rmse))
        assert series.per_scan[-1].nodes == 1024

    def test_position_ordering(self):
        """Тест: при r < 1 позиционная RMSE RFS выше ENUM со скана 2."""
        spec = with_overrides(linear_default(), r=0.9)
        rfs = rfs_bound_series(spec).rmse_table()
        enum = enum_pcrlb_series(spec).rmse_table()
        assert np.all(rfs[1:, 0] > enum[1:, 0])
        assert np.all(rfs[1:, 2] > enum[1:, 2])

    # ============== Отсечение ==============

    def test_pruning(self):
        spec = with_overrides(linear_default(), r=0.9)
        full = rfs_bound_series(spec)
        pruned = rfs_bound_series(spec, prune_eps=1e-3)
        assert pruned.per_scan[-1].nodes < full.per_scan[-1].nodes
        assert 0.0 < pruned.dropped_mass < 0.5
        assert pruned.dropped_mass == pytest.approx(1.0 - pruned.per_scan[-1].kept_mass)
        assert np.all(pruned.traces() <= full.traces() * (1 + 1e-12))

    # ============== Ограничения ==============

    def test_hard_cap(self):
        with pytest.raises(CapExceeded):
            rfs_bound_series(with_overrides(linear_default(), scans=25), k_max=25, prune_eps=1e-3)

    def test_configured_cap(self, patch_settings):
        patch_settings(BOUND_SERVICE, max_scans=5)
        with pytest.raises(CapExceeded):
            rfs_bound_series(linear_default(), k_max=6)
        assert len(rfs_bound_series(linear_default(), k_max=6, prune_eps=1e-4)) == 6

    def test_memory_budget(self, patch_settings, bearings_spec):
        """Тест: слой из 2^11 узлов не помещается в 1 МБ."""
        patch_settings(BOUND_SERVICE, memory_budget_mb=1)
        assert estimate_layer_bytes(2048, 4) > 1024 * 1024
        with pytest.raises(CapExceeded):
            rfs_bound_series(bearings_spec, k_max=12)
