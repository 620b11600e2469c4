"""
Общие фикстуры тестов chiralflow
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List

import pytest

from chiralflow.core.domain.bath import BathParams
from chiralflow.core.domain.chain import ChainParams
from chiralflow.core.domain.event_bus import EventDispatcher
from chiralflow.core.domain.events import DomainEvent
from chiralflow.core.domain.experiment import RunConfig
from chiralflow.core.domain.kernel import KernelVariant
from chiralflow.core.domain.state import EvolveConfig
from chiralflow.core.services.experiment import ExperimentService
from chiralflow.infrastructure.dependencies import make_engine_factory

# Небольшая конфигурация: секунды на полный запуск
SMALL_CONFIG: Dict[str, Any] = {
    "chain": {"N": 4, "D": 0.5},
    "bath": {"k_max": 20},
    "evolve": {"t_max": 5.0, "n_samples": 101},
}


@pytest.fixture
def small_chain() -> ChainParams:
    return ChainParams(N=4, D=0.5)


@pytest.fixture
def small_config(tmp_path: Path) -> RunConfig:
    """Кольцо N=4, 20 мод бани, сетка [0, 5] из 101 точки"""
    return RunConfig(
        chain=ChainParams(N=4, D=0.5),
        bath=BathParams(k_max=20),
        evolve=EvolveConfig(t_max=5.0, n_samples=101),
    )


@pytest.fixture
def ring3_config() -> RunConfig:
    """Кольцо N=3 с вариантом ядра continuum_limit (физичный, норма не растёт)"""
    return RunConfig(
        chain=ChainParams(N=3, D=0.5),
        bath=BathParams(k_max=20),
        evolve=EvolveConfig(t_max=20.0, n_samples=401),
        kernel_variant=KernelVariant.CONTINUUM_LIMIT,
    )


@pytest.fixture
def events() -> List[DomainEvent]:
    return []


@pytest.fixture
def dispatcher(events: List[DomainEvent]) -> EventDispatcher:
    """Диспетчер, складывающий все события в список events"""
    bus = EventDispatcher()
    bus.subscribe("*", events.append)
    return bus


@pytest.fixture
def experiment(dispatcher: EventDispatcher) -> ExperimentService:
    return ExperimentService(make_engine_factory(dispatcher), dispatcher)


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Запись конфигурации в JSON файл во временном каталоге"""

    def _write(data: Dict[str, Any], name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write
