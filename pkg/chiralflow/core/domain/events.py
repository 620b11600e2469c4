"""
Доменные события запусков и диагностики
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, Optional
from uuid import uuid4


@dataclass(kw_only=True)
class DomainEvent:
    """
    Базовый класс для всех доменных событий
    """

    event_id: str = field(default_factory=lambda: str(uuid4()))
    event_type: str = field(init=False)
    occurred_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    aggregate_id: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        """Автоматически устанавливает event_type из имени класса"""
        self.event_type = self.__class__.__name__

    def to_dict(self) -> Dict[str, Any]:
        """Преобразование события в словарь"""
        return {
            "event_id": self.event_id,
            "event_type": self.event_type,
            "occurred_at": self.occurred_at.isoformat(),
            "aggregate_id": self.aggregate_id,
            "metadata": self.metadata,
        }


@dataclass(kw_only=True)
class RunStarted(DomainEvent):
    """Запуск расчёта потока информации"""

    run_id: str
    engine: str
    N: int
    k_max: int

    def __post_init__(self):
        super().__post_init__()
        self.aggregate_id = self.run_id
        self.metadata.update({"engine": self.engine, "N": self.N, "k_max": self.k_max})


@dataclass(kw_only=True)
class RunCompleted(DomainEvent):
    """Успешное завершение расчёта"""

    run_id: str
    engine: str
    n_switch: int
    a_mod: float
    duration: float

    def __post_init__(self):
        super().__post_init__()
        self.aggregate_id = self.run_id
        self.metadata.update(
            {
                "engine": self.engine,
                "n_switch": self.n_switch,
                "a_mod": self.a_mod,
                "duration": self.duration,
            }
        )


@dataclass(kw_only=True)
class RunFailed(DomainEvent):
    """Расчёт завершился ошибкой"""

    run_id: str
    engine: str
    error_type: str
    error_message: str

    def __post_init__(self):
        super().__post_init__()
        self.aggregate_id = self.run_id
        self.metadata.update(
            {
                "engine": self.engine,
                "error_type": self.error_type,
                "error_message": self.error_message,
            }
        )


@dataclass(kw_only=True)
class SweepPointFailed(DomainEvent):
    """Точка развёртки по параметру не рассчитана"""

    parameter: str
    value: float
    error_message: str

    def __post_init__(self):
        super().__post_init__()
        self.aggregate_id = f"{self.parameter}={self.value!r}"
        self.metadata.update({"error_message": self.error_message})


@dataclass(kw_only=True)
class PoleDiagnostic(DomainEvent):
    """
    Диагностика лапласовского решения

    kind: "unstable_pole" (Re p > 0) или "cancellation" (полюс сократился с нулём числителя)
    """

    kind: str
    pole_real: float
    pole_imag: float
    channel: Optional[int] = None
    order: Optional[int] = None

    def __post_init__(self):
        super().__post_init__()
        self.metadata.update(
            {
                "kind": self.kind,
                "pole": [self.pole_real, self.pole_imag],
                "channel": self.channel,
                "order": self.order,
            }
        )
