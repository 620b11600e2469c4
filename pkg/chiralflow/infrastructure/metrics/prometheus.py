"""
Prometheus метрики симулятора
"""

import logging
import time
from functools import wraps
from typing import Callable, Optional

from prometheus_client import Counter, Histogram, Info, generate_latest, start_http_server

from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import (
    DomainEvent,
    PoleDiagnostic,
    RunCompleted,
    RunFailed,
)

logger = logging.getLogger(__name__)

runs_total = Counter(
    "chiralflow_runs_total",
    "Total number of flow runs",
    ["engine", "status"],
)

run_duration_seconds = Histogram(
    "chiralflow_run_duration_seconds",
    "Flow run duration in seconds",
    ["engine"],
    buckets=(0.1, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0, 300.0),
)

engine_evolve_seconds = Histogram(
    "chiralflow_engine_evolve_seconds",
    "Single trajectory propagation time in seconds",
    ["engine"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0),
)

sweep_points_total = Counter(
    "chiralflow_sweep_points_total",
    "Total number of sweep points",
    ["parameter", "status"],
)

pole_diagnostics_total = Counter(
    "chiralflow_pole_diagnostics_total",
    "Laplace solution diagnostics",
    ["kind"],
)

domain_events_total = Counter(
    "chiralflow_domain_events_total",
    "Total number of domain events",
    ["event_type"],
)

app_info = Info(
    "chiralflow_app",
    "Application information",
)


def record_run_metrics(engine: str, status: str, duration: Optional[float] = None) -> None:
    """
    Запись метрик запуска

    Args:
        engine: Имя движка
        status: success или error
        duration: Длительность в секундах (опционально)
    """
    runs_total.labels(engine=engine, status=status).inc()
    if duration is not None:
        run_duration_seconds.labels(engine=engine).observe(duration)


def record_sweep_point(parameter: str, status: str) -> None:
    sweep_points_total.labels(parameter=parameter, status=status).inc()


def record_pole_diagnostic(kind: str) -> None:
    pole_diagnostics_total.labels(kind=kind).inc()


def record_domain_event(event_type: str) -> None:
    domain_events_total.labels(event_type=event_type).inc()


def subscribe_metrics(dispatcher: EventDispatcher) -> None:
    """
    Подписка метрик на доменные события

    Args:
        dispatcher: Диспетчер событий запуска
    """

    def on_any(event: DomainEvent) -> None:
        record_domain_event(event.event_type)

    def on_completed(event: RunCompleted) -> None:
        record_run_metrics(event.engine, "success", event.duration)

    def on_failed(event: RunFailed) -> None:
        record_run_metrics(event.engine, "error")

    def on_pole(event: PoleDiagnostic) -> None:
        record_pole_diagnostic(event.kind)

    dispatcher.subscribe("*", on_any)
    dispatcher.subscribe(RunCompleted.__name__, on_completed)
    dispatcher.subscribe(RunFailed.__name__, on_failed)
    dispatcher.subscribe(PoleDiagnostic.__name__, on_pole)


def setup_metrics(app_version: str, port: Optional[int] = None) -> None:
    """
    Настройка Prometheus метрик

    Args:
        app_version: Версия пакета
        port: Порт HTTP-экспорта; None: без сервера
    """
    app_info.info({"name": "chiralflow", "version": app_version})
    if port is None:
        return
    try:
        start_http_server(port)
        logger.info(f"Prometheus метрики доступны на порту {port}")
    except OSError as e:
        logger.warning(f"Не удалось запустить Prometheus HTTP сервер: {e}")


def get_metrics() -> bytes:
    """Метрики в текстовом формате Prometheus"""
    return generate_latest()


def timing_metric(metric: Histogram, label_attr: Optional[str] = None):
    """
    Декоратор для измерения времени выполнения метода

    Args:
        metric: Prometheus Histogram метрика
        label_attr: Атрибут self, значение которого идёт в метку engine

    Returns:
        Декоратор
    """

    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                duration = time.perf_counter() - start_time
                if label_attr and args:
                    metric.labels(engine=getattr(args[0], label_attr)).observe(duration)
                else:
                    metric.observe(duration)

        return wrapper

    return decorator
