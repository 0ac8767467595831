"""
Global pytest fixtures for all tests.
"""

import numpy as np
import pytest

from rfs_bound.core.config import Settings
from rfs_bound.core.storage import OutputManager
from rfs_bound.modules.models import BernoulliParams
from rfs_bound.modules.scenarios import bearings_default, linear_default

LINEAR_E = (100.0, 5.0, 100.0, 5.0)


def make_params(b: float = 1.0, r: float = 1.0, pd: float = 0.8, e=LINEAR_E) -> BernoulliParams:
    """BernoulliParams with the linear-scenario error vectors by default."""
    return BernoulliParams(b=b, r=r, pd=pd, e0=tuple(e), e1=tuple(e))


@pytest.fixture
def params_factory():
    return make_params


@pytest.fixture
def linear_spec():
    return linear_default()


@pytest.fixture
def bearings_spec():
    return bearings_default()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def output_manager(tmp_path) -> OutputManager:
    """OutputManager writing into a temp directory."""
    return OutputManager(base_path=tmp_path)


@pytest.fixture
def patch_settings(monkeypatch):
    """
    Replace get_settings() in the given modules with fixed Settings.

    Usage:
        patch_settings("rfs_bound.modules.bound.service", max_scans=5)
    """

    def _patch(module: str, **overrides) -> Settings:
        fixed = Settings(**overrides)
        monkeypatch.setattr(f"{module}.get_settings", lambda: fixed)
        return fixed

    return _patch
