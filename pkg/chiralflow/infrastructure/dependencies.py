"""
Сборка зависимостей: реестр движков, диспетчер событий, сервисы
"""

import logging
from typing import Callable, Dict, Optional

from chiralflow.adapters.engines import AnalyticEngine, FullPropagatorEngine, KernelVolterraEngine
from chiralflow.core.domain.errors import ParameterError
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.experiment import EngineKind
from chiralflow.core.ports.engine import AbstractDynamicsEngine
from chiralflow.core.services.experiment import (
    EngineFactory,
    ExperimentContext,
    ExperimentService,
)
from chiralflow.core.services.sweep import SweepService
from chiralflow.infrastructure.metrics import subscribe_metrics

logger = logging.getLogger(__name__)

_ENGINES: Dict[
    EngineKind, Callable[[ExperimentContext, Optional[EventDispatcher]], AbstractDynamicsEngine]
] = {
    EngineKind.FULL_PROPAGATOR: lambda context, _: FullPropagatorEngine(context),
    EngineKind.KERNEL_VOLTERRA: lambda context, _: KernelVolterraEngine(context),
    EngineKind.ANALYTIC3: AnalyticEngine,
}


def build_engine(
    kind: EngineKind,
    context: ExperimentContext,
    dispatcher: Optional[EventDispatcher] = None,
) -> AbstractDynamicsEngine:
    """
    Создание движка по виду

    Args:
        kind: Вид движка
        context: Контекст запуска
        dispatcher: Диспетчер для диагностических событий

    Raises:
        ParameterError: Неизвестный движок или неподходящий контекст
    """
    try:
        constructor = _ENGINES[EngineKind(kind)]
    except (KeyError, ValueError) as e:
        raise ParameterError(f"Неизвестный движок: {kind}") from e
    engine = constructor(context, dispatcher)
    logger.debug(f"Создан движок {engine.name}")
    return engine


def make_engine_factory(dispatcher: Optional[EventDispatcher] = None) -> EngineFactory:
    """Фабрика движков для ExperimentService с привязанным диспетчером"""

    def factory(kind: EngineKind, context: ExperimentContext) -> AbstractDynamicsEngine:
        return build_engine(kind, context, dispatcher)

    return factory


def init_services(with_metrics: bool = True) -> tuple[ExperimentService, SweepService]:
    """
    Инициализация сервисов запуска и развёртки

    Args:
        with_metrics: Подписать Prometheus метрики на доменные события

    Returns:
        (ExperimentService, SweepService), разделяющие один диспетчер
    """
    dispatcher = EventDispatcher()
    if with_metrics:
        subscribe_metrics(dispatcher)
    experiment = ExperimentService(make_engine_factory(dispatcher), dispatcher)
    sweep = SweepService(experiment, dispatcher)
    logger.debug("Сервисы инициализированы")
    return experiment, sweep
