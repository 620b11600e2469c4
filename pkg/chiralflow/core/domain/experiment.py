"""
Доменные модели конфигурации запуска и развёртки
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from chiralflow.core.domain.bath import BathParams
from chiralflow.core.domain.chain import ChainParams, FrequencyConvention
from chiralflow.core.domain.errors import NormalizationError, ParameterError
from chiralflow.core.domain.kernel import KernelVariant
from chiralflow.core.domain.state import EvolveConfig

NORMALIZATION_TOL = 1e-12


class EngineKind(str, Enum):
    """Движки динамики"""

    FULL_PROPAGATOR = "full_propagator"
    KERNEL_VOLTERRA = "kernel_volterra"
    ANALYTIC3 = "analytic3"


class SweepParameter(str, Enum):
    B = "B"
    D = "D"
    LAMBDA = "lambda"
    GAMMA0 = "gamma0"


class SeedPolicy(str, Enum):
    """Политика зерна бани по точкам развёртки"""

    SHARED = "shared"
    RESAMPLED = "resampled"


@dataclass(frozen=True)
class InitialState:
    """Начальные амплитуды (c₀, c_n) в секторе не более одного возбуждения"""

    c0: complex
    c_n: np.ndarray

    def __post_init__(self):
        c_n = np.array(self.c_n, dtype=complex)
        if c_n.ndim != 1:
            raise ParameterError("c_n начального состояния должен быть одномерным")
        c_n.setflags(write=False)
        object.__setattr__(self, "c_n", c_n)
        object.__setattr__(self, "c0", complex(self.c0))
        defect = abs(self.norm - 1.0)
        if defect > NORMALIZATION_TOL:
            raise NormalizationError(
                f"Начальное состояние не нормировано: |норма − 1| = {defect:.3e}", defect=defect
            )

    @property
    def norm(self) -> float:
        return abs(self.c0) ** 2 + float(np.sum(np.abs(self.c_n) ** 2))

    @classmethod
    def from_amplitudes(
        cls, c0: complex, amplitudes: Dict[int, complex], N: int, normalize: bool = False
    ) -> "InitialState":
        """
        Сборка состояния из разреженного словаря {номер моды 1..N: амплитуда}

        Raises:
            ParameterError: Номер моды вне 1..N или нулевой вектор
        """
        c_n = np.zeros(N, dtype=complex)
        for mode, amplitude in amplitudes.items():
            if not 1 <= int(mode) <= N:
                raise ParameterError(f"Номер моды {mode} вне диапазона 1..{N}")
            c_n[int(mode) - 1] = complex(amplitude)
        c0 = complex(c0)
        if normalize:
            norm = math.sqrt(abs(c0) ** 2 + float(np.sum(np.abs(c_n) ** 2)))
            if norm == 0.0:
                raise ParameterError("Нельзя нормировать нулевое состояние")
            c0, c_n = c0 / norm, c_n / norm
        return cls(c0=c0, c_n=c_n)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c0": [self.c0.real, self.c0.imag],
            "c_n": [[float(a.real), float(a.imag)] for a in self.c_n],
        }


@dataclass(frozen=True)
class InitialPair:
    """Пара начальных состояний, между которыми считается следовое расстояние"""

    first: InitialState
    second: InitialState
    label: str = "custom"

    @classmethod
    def plus_minus(cls, N: int) -> "InitialPair":
        """ψ± = (|g⟩ ± |1⟩)/√2"""
        amplitude = 1.0 / math.sqrt(2.0)
        return cls(
            first=InitialState.from_amplitudes(amplitude, {1: amplitude}, N),
            second=InitialState.from_amplitudes(amplitude, {1: -amplitude}, N),
            label="plus_minus",
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "first": self.first.to_dict(), "second": self.second.to_dict()}


@dataclass(frozen=True)
class OutputOptions:
    """Куда и что писать; в провенанс не попадает"""

    directory: Path = Path("results")
    svg: bool = False
    verbose_bath: bool = False


@dataclass(frozen=True)
class RunConfig:
    """Полностью разрешённая конфигурация одного запуска"""

    chain: ChainParams
    bath: BathParams = field(default_factory=BathParams)
    evolve: EvolveConfig = field(default_factory=EvolveConfig)
    engine: EngineKind = EngineKind.FULL_PROPAGATOR
    convention: FrequencyConvention = FrequencyConvention.AS_PRINTED
    kernel_variant: KernelVariant = KernelVariant.OFF_DIAGONAL_AS_PRINTED
    clustering_eps: float = 1e-8
    deadband: float = 1e-10
    initial_pair: Optional[InitialPair] = None
    output: OutputOptions = field(default_factory=OutputOptions)

    def __post_init__(self):
        object.__setattr__(self, "engine", EngineKind(self.engine))
        object.__setattr__(self, "convention", FrequencyConvention(self.convention))
        object.__setattr__(self, "kernel_variant", KernelVariant(self.kernel_variant))
        if self.engine == EngineKind.ANALYTIC3 and self.chain.N != 3:
            raise ParameterError(f"Движок analytic3 требует N=3, получено N={self.chain.N}")
        if not self.clustering_eps > 0:
            raise ParameterError("clustering_eps должен быть положительным")
        if not self.deadband >= 0:
            raise ParameterError("deadband должен быть неотрицательным")
        if self.initial_pair is None:
            object.__setattr__(self, "initial_pair", InitialPair.plus_minus(self.chain.N))
        for state in (self.initial_pair.first, self.initial_pair.second):
            if state.c_n.shape[0] != self.chain.N:
                raise ParameterError(
                    f"Начальное состояние задаёт {state.c_n.shape[0]} мод, "
                    f"в кольце N={self.chain.N}"
                )

    def with_engine(self, engine: EngineKind) -> "RunConfig":
        return replace(self, engine=EngineKind(engine))

    def to_dict(self) -> Dict[str, Any]:
        """Провенанс: все разрешённые параметры без путей вывода"""
        return {
            "chain": self.chain.to_dict(),
            "bath": self.bath.to_dict(),
            "evolve": {
                "t_max": self.evolve.t_max,
                "n_samples": int(self.evolve.n_samples),
                "method": self.evolve.method.value,
                "rel_tol": self.evolve.rel_tol,
                "abs_tol": self.evolve.abs_tol,
                "frame": self.evolve.frame.value,
            },
            "engine": self.engine.value,
            "frequency_convention": self.convention.value,
            "kernel": {
                "variant": self.kernel_variant.value,
                "clustering_eps": self.clustering_eps,
                "omega_g_definition": "E_g/hbar",
            },
            "flow": {"deadband": self.deadband},
            "initial_pair": self.initial_pair.to_dict(),
        }


@dataclass(frozen=True)
class SweepSpec:
    """Развёртка одного параметра по списку значений"""

    parameter: SweepParameter
    values: Tuple[float, ...]
    seed_policy: SeedPolicy = SeedPolicy.SHARED

    def __post_init__(self):
        object.__setattr__(self, "parameter", SweepParameter(self.parameter))
        object.__setattr__(self, "seed_policy", SeedPolicy(self.seed_policy))
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ParameterError("Список значений развёртки пуст")
        object.__setattr__(self, "values", values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "parameter": self.parameter.value,
            "values": list(self.values),
            "seed_policy": self.seed_policy.value,
        }
