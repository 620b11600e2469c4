"""
SweepService - развёртка запуска по одному параметру
"""

import asyncio
import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional

import numpy as np

from chiralflow.core.domain.errors import ChiralFlowError
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import SweepPointFailed
from chiralflow.core.domain.experiment import RunConfig, SeedPolicy, SweepParameter, SweepSpec
from chiralflow.core.services.bath import resolve_center
from chiralflow.core.services.experiment import ExperimentService, RunResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    """Строка таблицы развёртки"""

    index: int
    value: float
    config: RunConfig
    result: Optional[RunResult] = None
    error: Optional[str] = None

    @property
    def status(self) -> str:
        return "ok" if self.result is not None else "failed"

    def to_row(self) -> Dict[str, Any]:
        if self.result is None:
            return {
                "value": self.value,
                "n_switch": None,
                "a_mod": None,
                "positive_fraction": None,
                "backflow": None,
                "status": self.status,
                "error": self.error or "",
            }
        segments = self.result.segments
        return {
            "value": self.value,
            "n_switch": segments.n_switch,
            "a_mod": segments.a_mod,
            "positive_fraction": segments.positive_fraction,
            "backflow": segments.backflow,
            "status": self.status,
            "error": "",
        }


def spawn_seed(seed: int, index: int) -> int:
    """Зерно точки index, порождённое из (seed, index) через SeedSequence"""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1, np.uint64)[0])


def point_config(base: RunConfig, spec: SweepSpec, index: int, value: float) -> RunConfig:
    """
    Конфигурация точки развёртки

    Центр бани фиксируется по базовой конфигурации, чтобы точки различались
    только развёртываемым параметром (и зерном при политике resampled).
    """
    chain = base.chain
    bath = resolve_center(base.bath, base.chain, base.convention)

    if spec.parameter == SweepParameter.B:
        chain = chain.with_field(B=value)
    elif spec.parameter == SweepParameter.D:
        chain = chain.with_field(D=value)
    elif spec.parameter == SweepParameter.LAMBDA:
        bath = replace(bath, lam=value)
    else:
        bath = replace(bath, gamma0=value)

    if spec.seed_policy == SeedPolicy.RESAMPLED:
        bath = replace(bath, seed=spawn_seed(bath.seed, index))

    output = replace(base.output, directory=base.output.directory / f"point_{index:03d}")
    return replace(base, chain=chain, bath=bath, output=output)


class SweepService:
    """
    Сервис развёрток
    Точки считаются независимо в потоках, порядок строк совпадает с порядком значений
    """

    def __init__(
        self,
        experiment: ExperimentService,
        dispatcher: Optional[EventDispatcher] = None,
    ):
        self.experiment = experiment
        self.dispatcher = dispatcher

    async def sweep(self, base: RunConfig, spec: SweepSpec, workers: int = 1) -> List[SweepRow]:
        """
        Выполнение развёртки

        Args:
            base: Базовая конфигурация
            spec: Параметр, значения, политика зерна
            workers: Максимум одновременно считаемых точек

        Returns:
            Строки в порядке spec.values; ошибка точки не прерывает остальные
        """
        semaphore = asyncio.Semaphore(max(1, int(workers)))
        logger.info(
            f"Развёртка {spec.parameter.value} по {len(spec.values)} значениям, воркеров {workers}"
        )

        async def run_point(index: int, value: float) -> SweepRow:
            try:
                config = point_config(base, spec, index, value)
            except ChiralFlowError as e:
                return self._failed(spec, index, value, base, e)
            async with semaphore:
                try:
                    result = await asyncio.to_thread(self.experiment.run, config)
                except ChiralFlowError as e:
                    return self._failed(spec, index, value, config, e)
            return SweepRow(index=index, value=value, config=config, result=result)

        rows = await asyncio.gather(
            *(run_point(index, value) for index, value in enumerate(spec.values))
        )
        failed = sum(1 for row in rows if row.result is None)
        logger.info(f"Развёртка завершена: {len(rows) - failed} успешно, {failed} с ошибкой")
        return list(rows)

    def _failed(
        self, spec: SweepSpec, index: int, value: float, config: RunConfig, error: Exception
    ) -> SweepRow:
        logger.warning(f"Точка {index} ({spec.parameter.value}={value}) не посчитана: {error}")
        if self.dispatcher:
            self.dispatcher.publish(
                SweepPointFailed(
                    parameter=spec.parameter.value,
                    value=value,
                    error_message=f"{type(error).__name__}: {error}",
                )
            )
        return SweepRow(index=index, value=value, config=config, error=str(error))
