"""
Обработка исключений и кастомные ошибки.

Каждое исключение несёт машинно-читаемый код и код возврата процесса;
CLI печатает их одной строкой в stderr.
"""

from typing import Optional

from rfs_bound.core.logger import get_logger

logger = get_logger(__name__)


class AppException(Exception):
    """Базовое исключение приложения."""

    code = "internal_error"
    exit_code = 1

    def __init__(self, message: str, details: Optional[dict] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def to_line(self) -> str:
        """Одна строка `<code>: <message>` для stderr."""
        return f"{self.code}: {self.message}"


class ConfigError(AppException):
    """Ошибка конфигурации (неизвестный ключ, значение вне диапазона)."""

    code = "config_error"
    exit_code = 2

    def __init__(
        self,
        message: str,
        key: Optional[str] = None,
        line: Optional[int] = None,
        details: Optional[dict] = None,
    ):
        details = dict(details or {})
        if key is not None:
            details["key"] = key
        if line is not None:
            details["line"] = line
        self.key = key
        self.line = line
        super().__init__(message, details)

    def to_line(self) -> str:
        where = []
        if self.key is not None:
            where.append(f"key={self.key}")
        if self.line is not None:
            where.append(f"line={self.line}")
        prefix = f"{self.code}[{','.join(where)}]" if where else self.code
        return f"{prefix}: {self.message}"


class CapExceeded(AppException):
    """Число узлов дерева последовательностей превышает бюджет."""

    code = "cap_exceeded"
    exit_code = 3


class OutputError(AppException):
    """Ошибка записи результатов."""

    code = "io_error"
    exit_code = 4


class NumericalError(AppException):
    """Базовое исключение численных операций."""

    code = "numerical_error"
    exit_code = 5


class NotSpd(NumericalError):
    """Матрица не является симметричной положительно определённой."""

    code = "not_spd"


class SingularF(NumericalError):
    """Матрица перехода вырождена (нужна для рекурсии без шума процесса)."""

    code = "singular_f"


class DomainError(NumericalError):
    """Аргумент вне области определения."""

    code = "domain_error"


class OriginSingularity(NumericalError):
    """Пеленг не определён: цель совпадает с наблюдателем."""

    code = "origin_singularity"


class DegenerateWeights(NumericalError):
    """Все правдоподобия частиц обнулились: фильтр разошёлся."""

    code = "degenerate_weights"


def report_exception(exc: BaseException) -> tuple[str, int]:
    """
    Преобразует исключение в строку для stderr и код возврата.

    Args:
        exc: Пойманное исключение

    Returns:
        (строка, exit code)
    """
    if isinstance(exc, AppException):
        logger.error(f"{type(exc).__name__}: {exc.message}")
        return exc.to_line(), exc.exit_code

    logger.exception(f"Unhandled exception: {exc}")
    return f"{AppException.code}: {exc}", AppException.exit_code
