"""
Рекурсии матрицы Фишера по последовательностям наблюдений.

Публичный API:
    - initial_fim, fim_predict, fim_update, fim_noiseless, measurement_information
    - advance_fim_layer, prior_layer, predict_stack
    - FimLayer
"""

from .models import FimLayer
from .service import (
    advance_fim_layer,
    fim_noiseless,
    fim_predict,
    fim_update,
    initial_fim,
    measurement_information,
    predict_stack,
    prior_layer,
)

__all__ = [
    "FimLayer",
    "advance_fim_layer",
    "fim_noiseless",
    "fim_predict",
    "fim_update",
    "initial_fim",
    "measurement_information",
    "predict_stack",
    "prior_layer",
]
