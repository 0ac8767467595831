"""
Unit-тесты для рекурсий дерева последовательностей наблюдений.
"""

import numpy as np
import pytest

from rfs_bound.core.exceptions import DomainError
from rfs_bound.modules.seqtree import (
    MAX_ORACLE_SCANS,
    PatternIndex,
    SequenceLayer,
    advance,
    brute_force_layer,
    build_layers,
    gamma,
    gamma_after_empty,
    init_layer,
    prune_layer,
)
from tests.conftest import make_params


class TestInitLayer:
    """Тесты для init_layer."""

    @pytest.mark.parametrize(
        "b, prob, rho",
        [
            (1.0, [0.2, 0.8], [0.0, 0.0]),
            (0.0, [1.0, 0.0], [1.0, 0.0]),
            (0.5, [0.6, 0.4], [0.5, 0.0]),
        ],
    )
    def test_first_scan(self, b, prob, rho):
        layer = init_layer(make_params(b=b, pd=0.8))
        np.testing.assert_array_equal(layer.codes, [0, 1])
        np.testing.assert_allclose(layer.prob, prob, atol=1e-15)
        np.testing.assert_allclose(layer.rho, rho, atol=1e-15)
        assert layer.dropped_mass == 0.0

    def test_detection_next_empty(self):
        layer = init_layer(make_params(r=0.9, pd=0.7))
        assert layer.p_empty_next[1] == pytest.approx(0.37)


class TestGamma:
    """Тесты для оператора Γ."""

    def test_after_detection(self):
        """Тест: после обнаружения Γ = 1 - r·P_d."""
        assert gamma(0.9, make_params(r=0.9, pd=0.7), last_was_detection=True) == pytest.approx(0.37)

    @pytest.mark.parametrize("p_prev", [0.2, 0.5, 0.9, 1.0])
    def test_half_persistence(self, p_prev):
        """Тест: при r = 0.5 поправка обнуляется."""
        assert gamma(p_prev, make_params(r=0.5, pd=0.8), last_was_detection=False) == pytest.approx(0.6)

    def test_certain_persistence(self):
        assert gamma(0.6, make_params(r=1.0, pd=0.8), last_was_detection=False) == pytest.approx(0.8667, abs=1e-4)

    def test_out_of_range(self):
        """Тест: p_prev < 1 - P_d отклоняется."""
        with pytest.raises(DomainError):
            gamma(0.1, make_params(pd=0.8), last_was_detection=False)
        with pytest.raises(DomainError):
            gamma_after_empty(np.array([0.5, 1.1]), make_params(pd=0.8))

    def test_vectorised_matches_scalar(self):
        params = make_params(r=0.9, pd=0.7)
        p_prev = np.array([0.3, 0.45, 0.8, 1.0])
        expected = [gamma(p, params, last_was_detection=False) for p in p_prev]
        np.testing.assert_allclose(gamma_after_empty(p_prev, params), expected, rtol=1e-15)

    def test_range(self):
        """Тест: результат всегда в [1 - P_d, 1]."""
        for r in (0.0, 0.3, 0.9, 1.0):
            params = make_params(r=r, pd=0.6)
            values = gamma_after_empty(np.linspace(0.4, 1.0, 25), params)
            assert np.all(values >= 0.4) and np.all(values <= 1.0)


class TestAdvance:
    """Тесты для advance."""

    def test_certain_target(self):
        """Тест: при b = r = 1 вероятности - произведения независимых обнаружений."""
        layer = advance(init_layer(make_params(pd=0.8)), make_params(pd=0.8))
        np.testing.assert_array_equal(layer.codes, [0, 1, 2, 3])
        np.testing.assert_allclose(layer.prob, [0.04, 0.16, 0.16, 0.64], rtol=1e-12)
        np.testing.assert_allclose(layer.rho, 0.0, atol=1e-15)

    def test_children_layout(self):
        """Тест: дети кода m - m и m + 2^k."""
        params = make_params(b=0.5, r=0.9, pd=0.7)
        layer = advance(advance(init_layer(params), params), params)
        np.testing.assert_array_equal(layer.codes, np.arange(8))
        np.testing.assert_array_equal(layer.empty_ended(), [True] * 4 + [False] * 4)

    @pytest.mark.parametrize(
        "b, r, pd",
        [(1.0, 1.0, 0.8), (1.0, 0.9, 0.8), (0.1, 0.5, 0.7), (0.5, 0.95, 0.3), (0.0, 0.9, 0.9)],
    )
    def test_mass_conservation(self, b, r, pd):
        params = make_params(b=b, r=r, pd=pd)
        for layer in build_layers(params, 14):
            assert layer.kept_mass == pytest.approx(1.0, abs=1e-12)
            layer.check_invariants(params.pd)

    def test_long_chain_normalization(self):
        """Тест: нормировка держится на 20 сканах."""
        params = make_params(b=0.8, r=0.9, pd=0.8)
        layer = build_layers(params, 20)[-1]
        assert layer.size == 1 << 20
        assert abs(float(np.sum(layer.prob)) - 1.0) <= 1e-12

    def test_parent_child_sums(self):
        """Тест: сумма детей равна родителю."""
        params = make_params(b=0.7, r=0.9, pd=0.6)
        parent = advance(init_layer(params), params)
        child = advance(parent, params)
        np.testing.assert_allclose(child.prob[:4] + child.prob[4:], parent.prob, rtol=1e-14)


class TestOracle:
    """Сверка рекурсий с прямым перебором."""

    @pytest.mark.parametrize(
        "b, r, pd",
        [(1.0, 0.9, 0.8), (0.1, 0.5, 0.7), (0.5, 0.95, 0.9), (0.9, 0.2, 0.4)],
    )
    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_matches_recursion(self, b, r, pd, k):
        params = make_params(b=b, r=r, pd=pd)
        recursive = build_layers(params, k)[-1]
        exact = brute_force_layer(params, k)
        np.testing.assert_allclose(recursive.prob, exact.prob, atol=1e-12)
        np.testing.assert_allclose(recursive.rho, exact.rho, atol=1e-12)
        np.testing.assert_allclose(recursive.p_empty_next, exact.p_empty_next, atol=1e-12)

    def test_first_scan_exact(self):
        params = make_params(b=0.4, r=0.7, pd=0.6)
        exact = brute_force_layer(params, 1)
        np.testing.assert_allclose(exact.prob, init_layer(params).prob, atol=1e-15)

    def test_oracle_limits(self):
        params = make_params()
        with pytest.raises(DomainError):
            brute_force_layer(params, 0)
        with pytest.raises(DomainError):
            brute_force_layer(params, MAX_ORACLE_SCANS + 1)


class TestPruneLayer:
    """Тесты для prune_layer."""

    @pytest.fixture
    def layer(self):
        params = make_params(pd=0.8)
        return advance(init_layer(params), params)

    def test_drops_small_patterns(self, layer):
        pruned = prune_layer(layer, 0.05)
        np.testing.assert_array_equal(pruned.codes, [1, 2, 3])
        assert pruned.dropped_mass == pytest.approx(0.04)
        assert pruned.kept_mass + pruned.dropped_mass == pytest.approx(1.0, abs=1e-12)

    def test_zero_eps_is_identity(self, layer):
        assert prune_layer(layer, 0.0) is layer

    def test_dense_fills_zeros(self, layer):
        dense = prune_layer(layer, 0.05).dense("prob")
        np.testing.assert_allclose(dense, [0.0, 0.16, 0.16, 0.64])

    def test_pruned_children(self, layer):
        """Тест: дети отсечённого слоя сохраняют отброшенную массу."""
        params = make_params(pd=0.8)
        child = advance(prune_layer(layer, 0.05), params)
        np.testing.assert_array_equal(child.codes, [1, 2, 3, 5, 6, 7])
        assert child.dropped_mass == pytest.approx(0.04)
        child.check_invariants(params.pd)


class TestSequenceLayer:
    """Тесты для SequenceLayer.check_invariants."""

    def test_bad_normalization(self):
        layer = SequenceLayer(k=1, codes=[0, 1], prob=[0.5, 0.4], p_empty_next=[0.5, 0.5], rho=[0.0, 0.0])
        with pytest.raises(DomainError):
            layer.check_invariants(0.8)

    def test_detection_rho_must_vanish(self):
        layer = SequenceLayer(k=1, codes=[0, 1], prob=[0.5, 0.5], p_empty_next=[0.5, 0.5], rho=[0.0, 0.1])
        with pytest.raises(DomainError):
            layer.check_invariants(0.8)

    def test_p_empty_lower_bound(self):
        layer = SequenceLayer(k=1, codes=[0, 1], prob=[0.5, 0.5], p_empty_next=[0.1, 0.5], rho=[0.0, 0.0])
        with pytest.raises(DomainError):
            layer.check_invariants(0.8)


class TestPatternIndex:
    """Тесты для PatternIndex."""

    def test_from_detections(self):
        index = PatternIndex.from_detections([True, False, True])
        assert (index.k, index.code, index.n) == (3, 5, 6)
        assert index.detections() == (True, False, True)
        assert index.last_was_detection

    def test_children_and_parent(self):
        index = PatternIndex(k=2, code=1)
        assert index.child(False).code == 1
        assert index.child(True).code == 5
        assert index.child(True).parent() == index

    def test_root(self):
        root = PatternIndex(k=0, code=0)
        assert not root.last_was_detection
        with pytest.raises(DomainError):
            root.parent()

    def test_code_out_of_range(self):
        with pytest.raises(ValueError):
            PatternIndex(k=2, code=4)
