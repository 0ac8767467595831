"""
Модели Bernoulli RFS: динамика, наблюдение, сценарии и сэмплеры.

Публичный API:
    - BernoulliParams, LinearGaussianModel, ScanModel, MeasurementKind
    - cv_transition, cv_process_noise
    - BearingsScenarioModel, bearing, bearing_jacobian
    - sample_transition, sample_measurement
"""

from .dynamics import cv_process_noise, cv_transition, position_selector
from .geometry import (
    BearingsScenarioModel,
    bearing,
    bearing_jacobian,
    turn_matrix,
    wrap_angle,
)
from .sampling import sample_measurement, sample_transition
from .schemas import BernoulliParams, LinearGaussianModel, MeasurementKind, ScanModel

__all__ = [
    # Schemas
    "BernoulliParams",
    "LinearGaussianModel",
    "MeasurementKind",
    "ScanModel",
    # Dynamics
    "cv_transition",
    "cv_process_noise",
    "position_selector",
    # Bearings
    "BearingsScenarioModel",
    "bearing",
    "bearing_jacobian",
    "turn_matrix",
    "wrap_angle",
    # Samplers
    "sample_transition",
    "sample_measurement",
]
