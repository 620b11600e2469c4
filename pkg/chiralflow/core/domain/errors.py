"""
Иерархия исключений симулятора
"""

from typing import Dict, List, Optional


class ChiralFlowError(Exception):
    """Базовое исключение пакета"""


class ParameterError(ChiralFlowError, ValueError):
    """Недопустимые параметры модели, бани или интегрирования"""


class ModeIndexError(ChiralFlowError, IndexError):
    """Индекс моды вне диапазона 1..N"""


class ShapeError(ChiralFlowError, ValueError):
    """Несогласованные размерности массивов"""


class GridError(ChiralFlowError, ValueError):
    """Временная сетка неравномерна или слишком коротка"""


class NormalizationError(ChiralFlowError, ValueError):
    """Состояние не нормировано"""

    def __init__(self, message: str, defect: float, t: Optional[float] = None):
        super().__init__(message)
        self.defect = defect
        self.t = t


class DensityMatrixError(ChiralFlowError, ValueError):
    """Матрица плотности не эрмитова, не нормирована или не положительна"""


class IntegrationError(ChiralFlowError, RuntimeError):
    """Сбой адаптивного интегратора"""

    def __init__(self, message: str, t_reached: float):
        super().__init__(message)
        self.t_reached = t_reached


class EigensolverError(ChiralFlowError, ArithmeticError):
    """Сбой собственного разложения"""

    def __init__(self, message: str, condition_report: Optional[Dict[str, float]] = None):
        super().__init__(message)
        self.condition_report = condition_report or {}


class ConfigurationError(ChiralFlowError, ValueError):
    """Ошибка валидации конфигурации запуска"""

    def __init__(self, message: str, field_errors: Optional[List[str]] = None):
        super().__init__(message)
        self.field_errors = field_errors or []
