"""
Настройка логирования для приложения.
Поддерживает форматирование с Run ID для сквозного отслеживания запусков.
"""

import logging
import sys
from typing import Optional

from rfs_bound.core.config import settings
from rfs_bound.core.trace import run_id_var


class RunIDFilter(logging.Filter):
    """Фильтр для добавления run_id в записи логов."""

    def __init__(self, default_run_id: str = "-"):
        super().__init__()
        self.default_run_id = default_run_id

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run_id"):
            record.run_id = run_id_var.get() or self.default_run_id
        return True


def setup_logging(log_level: Optional[str] = None) -> None:
    """
    Настраивает логирование для всего приложения.

    Args:
        log_level: Уровень логирования (DEBUG, INFO, WARNING, ERROR, CRITICAL).
                   Если не указан, берется из настроек.
    """
    level = (log_level or settings.log_level).upper()

    # Формат логов: время | уровень | run_id | модуль | сообщение
    log_format = "%(asctime)s | %(levelname)-8s | %(run_id)s | %(name)s | %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # stdout остаётся свободным, результаты пишутся в файлы
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(log_format, date_format))
    console_handler.addFilter(RunIDFilter())

    root_logger.addHandler(console_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Возвращает логгер с указанным именем.

    Args:
        name: Имя логгера (обычно __name__ модуля).

    Returns:
        Настроенный логгер.

    Example:
        logger = get_logger(__name__)
        logger.info("Scan %d: %d nodes", k, n_nodes)
    """
    return logging.getLogger(name)
