"""
Тесты для сценариев экспериментов.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from rfs_bound.modules.models import MeasurementKind, bearing_jacobian, cv_transition
from rfs_bound.modules.scenarios import (
    ScenarioKind,
    bearings_default,
    linear_default,
    prior_cov,
    scan_models,
    scenario_by_name,
    with_overrides,
)


class TestDefaults:
    """Тесты для стандартных сценариев."""

    def test_linear(self):
        spec = linear_default()
        assert spec.kind is ScenarioKind.LINEAR_CV
        assert (spec.scans, spec.t_step, spec.q) == (10, 5.0, 1e-8)
        assert (spec.params.b, spec.params.r, spec.params.pd) == (1.0, 1.0, 0.8)
        assert spec.params.e0 == (100.0, 5.0, 100.0, 5.0)
        assert not spec.noiseless

    def test_bearings(self):
        spec = bearings_default()
        assert spec.kind is ScenarioKind.BEARINGS_ONLY
        assert spec.scans == 20
        assert spec.noiseless
        assert spec.params.pd == 0.9
        assert spec.params.e1 == (10000.0, 100.0, 10000.0, 100.0)
        assert spec.omega == pytest.approx(math.radians(1.0125))

    def test_prior_covariance(self):
        np.testing.assert_array_equal(prior_cov(bearings_default()), np.diag([1e8, 1e4, 1e8, 1e4]))
        np.testing.assert_array_equal(linear_default().prior_cov(), np.diag([1e4, 25.0, 1e4, 25.0]))

    def test_sensor_covariance(self):
        np.testing.assert_array_equal(linear_default().sensor_cov(), np.diag([625.0, 625.0]))
        assert bearings_default().sensor_cov()[0, 0] == pytest.approx(math.radians(1.0) ** 2)

    def test_by_name(self):
        assert scenario_by_name("bearings").kind is ScenarioKind.BEARINGS_ONLY
        assert scenario_by_name("linear", pd=0.7).params.pd == 0.7
        with pytest.raises(ValueError):
            scenario_by_name("radar")


class TestOverrides:
    """Тесты для with_overrides."""

    def test_existence_parameters(self):
        spec = with_overrides(linear_default(), b=0.1, r=0.9, pd=0.7)
        assert (spec.params.b, spec.params.r, spec.params.pd) == (0.1, 0.9, 0.7)

    def test_error_scale(self):
        """Тест: e_scale = 2 удваивает векторы ошибок."""
        spec = with_overrides(linear_default(), e_scale=2.0)
        assert spec.params.e0 == (200.0, 10.0, 200.0, 10.0)
        assert spec.params.e1 == spec.params.e0

    def test_prior_std_updates_errors(self):
        spec = with_overrides(linear_default(), prior_std=(50.0, 2.0))
        assert spec.params.e0 == (50.0, 2.0, 50.0, 2.0)

    def test_original_unchanged(self):
        spec = linear_default()
        with_overrides(spec, pd=0.5, scans=4)
        assert spec.params.pd == 0.8 and spec.scans == 10

    @pytest.mark.parametrize(
        "overrides",
        [
            {"pd": 1.0},
            {"b": -0.1},
            {"scans": 0},
            {"t_step": 0.0},
            {"e_scale": 0.0},
            {"omega": 0.01},
            {"sensor_std": (25.0,)},
            {"prior_std": (0.0, 5.0)},
        ],
    )
    def test_invalid_linear(self, overrides):
        with pytest.raises(ValidationError):
            with_overrides(linear_default(), **overrides)

    def test_bearings_requires_ownship(self):
        with pytest.raises(ValidationError):
            with_overrides(bearings_default(), initial_ownship=None)


class TestScanModels:
    """Тесты для scan_models."""

    def test_linear_is_shared(self, linear_spec):
        model = scan_models(linear_spec, 1)
        assert scan_models(linear_spec, 7) is model
        assert model.kind is MeasurementKind.LINEAR
        np.testing.assert_array_equal(model.offset, np.zeros(4))
        np.testing.assert_array_equal(model.birth_mean, linear_spec.initial_target)

    @pytest.mark.parametrize("k", [0, 11])
    def test_out_of_range(self, linear_spec, k):
        with pytest.raises(ValueError):
            scan_models(linear_spec, k)

    def test_bearings_models(self, bearings_spec):
        """Тест: H - якобиан в номинальной точке, U - смещение наблюдателя."""
        geometry = bearings_spec.bearings_model()
        for k in (1, 5, 20):
            model = scan_models(bearings_spec, k)
            assert model.kind is MeasurementKind.BEARING
            assert model.noiseless
            np.testing.assert_allclose(model.h_mat, bearing_jacobian(geometry.nominal_relative_state(k)))
            np.testing.assert_allclose(model.offset, geometry.offset_into(k))
            np.testing.assert_allclose(
                model.propagate(geometry.nominal_relative_state(k - 1)), model.birth_mean, rtol=1e-9, atol=1e-6
            )

    def test_linear_nominal_state(self, linear_spec):
        f_mat = cv_transition(5.0)
        np.testing.assert_array_equal(linear_spec.nominal_state(0), linear_spec.initial_target)
        np.testing.assert_allclose(linear_spec.nominal_state(2), f_mat @ f_mat @ np.asarray(linear_spec.initial_target))


class TestBundleValidation:
    """Пакеты сканов строятся через проверенную линейную модель."""

    SERVICE = "rfs_bound.modules.scenarios.service"

    def test_linear_rejects_indefinite_noise(self, monkeypatch):
        monkeypatch.setattr(f"{self.SERVICE}.cv_process_noise", lambda t_step, q: -np.eye(4))
        with pytest.raises(ValidationError, match="q_mat"):
            scan_models(linear_default(t_step=3.25), 1)

    def test_bearings_rejects_indefinite_noise(self, monkeypatch):
        monkeypatch.setattr(f"{self.SERVICE}.cv_process_noise", lambda t_step, q: -np.eye(4))
        with pytest.raises(ValidationError, match="q_mat"):
            scan_models(bearings_default(t_step=3.25), 1)
