"""
ExperimentService - подготовка контекста, запуск движков и расчёт потока информации
"""

import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple
from uuid import uuid4

import numpy as np

from chiralflow.core.domain.bath import BathModes, BathParams
from chiralflow.core.domain.chain import SystemSpectrum
from chiralflow.core.domain.errors import ChiralFlowError
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import DomainEvent, RunCompleted, RunFailed, RunStarted
from chiralflow.core.domain.experiment import EngineKind, RunConfig
from chiralflow.core.domain.flow import FlowSegments, FlowSeries
from chiralflow.core.domain.kernel import KernelParams
from chiralflow.core.domain.state import Trajectory
from chiralflow.core.ports.engine import AbstractDynamicsEngine
from chiralflow.core.services.bath import resolve_center, sample_modes
from chiralflow.core.services.kernel import kernel_params_from
from chiralflow.core.services.model import build_spectrum
from chiralflow.core.services.observables import (
    cross_correlation_lag,
    derivative_series,
    distance_series,
    dominant_period,
    flow_series,
    uniform_step,
)

logger = logging.getLogger(__name__)

TIME_UNIT_NOTE = "время безразмерно (ħ/|J1|); для J1 порядка мэВ единица порядка пикосекунды"


@dataclass(frozen=True)
class ExperimentContext:
    """Всё, что движку нужно знать о модели: спектр, баня, ядро, сетка"""

    config: RunConfig
    spectrum: SystemSpectrum
    bath: BathParams
    modes: BathModes
    kernel: KernelParams

    def provenance(self) -> Dict[str, Any]:
        """Полная разрешённая конфигурация для артефактов"""
        data = self.config.to_dict()
        data["bath"] = self.bath.to_dict()
        data["kernel"]["omega_g"] = self.kernel.omega_g
        data["time_unit"] = TIME_UNIT_NOTE
        return data


EngineFactory = Callable[[EngineKind, ExperimentContext], AbstractDynamicsEngine]


@dataclass(frozen=True)
class RunResult:
    """Результат одного запуска"""

    run_id: str
    context: ExperimentContext
    trajectories: Tuple[Trajectory, Trajectory]
    series: FlowSeries
    segments: FlowSegments

    def report(self) -> Dict[str, Any]:
        """Содержимое segments.json"""
        return {**self.segments.to_dict(), "provenance": self.context.provenance()}


def prepare_context(config: RunConfig) -> ExperimentContext:
    """
    Спектр, разрешённый центр бани, моды и параметры ядра

    Raises:
        ParameterError: Недопустимые параметры
    """
    spectrum = build_spectrum(config.chain, config.convention)
    bath = resolve_center(config.bath, config.chain, config.convention)
    modes = sample_modes(bath)
    kernel = kernel_params_from(bath, spectrum, config.kernel_variant)
    return ExperimentContext(
        config=config, spectrum=spectrum, bath=bath, modes=modes, kernel=kernel
    )


class ExperimentService:
    """
    Сервис запусков
    Строит контекст, вызывает движок для пары начальных состояний, считает D(t), R(t)
    """

    def __init__(self, engine_factory: EngineFactory, dispatcher: Optional[EventDispatcher] = None):
        """
        Args:
            engine_factory: Фабрика движков по виду и контексту
            dispatcher: Диспетчер доменных событий (опционально)
        """
        self.engine_factory = engine_factory
        self.dispatcher = dispatcher

    def _publish(self, event: DomainEvent) -> None:
        if self.dispatcher:
            self.dispatcher.publish(event)

    def evolve_pair(
        self, context: ExperimentContext, engine: Optional[EngineKind] = None
    ) -> Tuple[Trajectory, Trajectory]:
        """Траектории обоих начальных состояний пары"""
        kind = EngineKind(engine or context.config.engine)
        instance = self.engine_factory(kind, context)
        pair = context.config.initial_pair
        assert pair is not None
        return instance.evolve(pair.first), instance.evolve(pair.second)

    def run(self, config: RunConfig) -> RunResult:
        """
        Запуск: траектории пары, D(t), R(t), разбиение на периоды

        Args:
            config: Разрешённая конфигурация

        Returns:
            RunResult

        Raises:
            ChiralFlowError: Ошибки параметров, интегрирования, нормировки
        """
        run_id = str(uuid4())
        engine = config.engine.value
        extra = {"extra_fields": {"run_id": run_id}}
        started = time.perf_counter()

        try:
            context = prepare_context(config)
            self._publish(
                RunStarted(
                    run_id=run_id,
                    engine=engine,
                    N=context.spectrum.N,
                    k_max=context.modes.k_max,
                )
            )
            logger.info(
                f"Запуск {engine}: N={context.spectrum.N}, k_max={context.modes.k_max}, "
                f"B={config.chain.B}, D={config.chain.D}",
                extra=extra,
            )
            first, second = self.evolve_pair(context)
            series, segments = flow_series(first, second, config.deadband)
        except ChiralFlowError as e:
            logger.error(f"Запуск {engine} завершился ошибкой: {e}", extra=extra)
            self._publish(
                RunFailed(
                    run_id=run_id,
                    engine=engine,
                    error_type=type(e).__name__,
                    error_message=str(e),
                )
            )
            raise

        duration = time.perf_counter() - started
        self._publish(
            RunCompleted(
                run_id=run_id,
                engine=engine,
                n_switch=segments.n_switch,
                a_mod=segments.a_mod,
                duration=duration,
            )
        )
        logger.info(
            f"Запуск {engine} завершён: n_switch={segments.n_switch}, A_mod={segments.a_mod:.4g}",
            extra=extra,
        )
        return RunResult(
            run_id=run_id,
            context=context,
            trajectories=(first, second),
            series=series,
            segments=segments,
        )

    def compare(
        self, config: RunConfig, engine_a: EngineKind, engine_b: EngineKind
    ) -> Dict[str, Any]:
        """
        Сравнение двух движков на одной конфигурации

        Returns:
            Отчёт: max|Δ|c_n||, max|ΔD| (если оба ряда физичны), сдвиг R(t)
        """
        engine_a, engine_b = EngineKind(engine_a), EngineKind(engine_b)
        context = prepare_context(config)
        pair_a = self.evolve_pair(context, engine_a)
        pair_b = self.evolve_pair(context, engine_b)

        amplitude_deviation = max(
            float(np.max(np.abs(np.abs(a.c) - np.abs(b.c)))) for a, b in zip(pair_a, pair_b)
        )
        report: Dict[str, Any] = {
            "engines": [engine_a.value, engine_b.value],
            "max_abs_amplitude_deviation": amplitude_deviation,
            "provenance": context.provenance(),
        }

        try:
            D_a = distance_series(*pair_a)
            D_b = distance_series(*pair_b)
        except ChiralFlowError as e:
            logger.warning(f"Следовое расстояние не сравнивается: {e}")
            report.update({"max_abs_D_deviation": None, "D_unavailable": str(e)})
            return report

        h = uniform_step(pair_a[0].t)
        R_a = derivative_series(D_a, h)
        R_b = derivative_series(D_b, h)
        period = dominant_period(R_a, h)
        lag = cross_correlation_lag(R_a, R_b, h)
        report.update(
            {
                "max_abs_D_deviation": float(np.max(np.abs(D_a - D_b))),
                "dominant_period": period,
                "R_lag": lag,
                "R_lag_over_half_period": lag / (0.5 * period) if np.isfinite(period) else None,
            }
        )
        logger.info(
            f"Сравнение {engine_a.value}/{engine_b.value}: max|Δ|c||={amplitude_deviation:.3e}, "
            f"max|ΔD|={report['max_abs_D_deviation']:.3e}"
        )
        return report
