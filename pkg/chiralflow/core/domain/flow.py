"""
Доменные модели редуцированной матрицы плотности и потока информации
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from chiralflow.core.domain.errors import DensityMatrixError, GridError, ShapeError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """
    Матрица плотности кольца в базисе (|g⟩, |1⟩, …, |N⟩)

    Эрмитовость и след проверяются при создании; положительность проверяет
    сервис observables с порогом, согласованным с дефектом нормировки.
    """

    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ShapeError(f"Матрица плотности должна быть квадратной, форма {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise DensityMatrixError("Матрица плотности не эрмитова")
        trace = np.trace(rho)
        if abs(trace - 1.0) > TRACE_TOL:
            raise DensityMatrixError(f"След матрицы плотности {trace.real:.3e} отличается от 1")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


@dataclass(frozen=True)
class FlowSeries:
    """Дискретные D(t), R(t) и знак потока на равномерной сетке"""

    t: np.ndarray
    D: np.ndarray
    R: np.ndarray
    deadband: float = 1e-10

    def __post_init__(self):
        arrays = [np.array(getattr(self, name), dtype=float) for name in ("t", "D", "R")]
        if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1:
            raise ShapeError("t, D и R должны быть одномерными массивами одной длины")
        if arrays[0].size > 1 and np.any(np.diff(arrays[0]) <= 0):
            raise GridError("Временная сетка должна строго возрастать")
        if np.any(arrays[1] < 0.0) or np.any(arrays[1] > 1.0):
            raise DensityMatrixError("Следовое расстояние вышло за пределы [0, 1]")
        for name, array in zip(("t", "D", "R"), arrays):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def __len__(self) -> int:
        return int(self.t.shape[0])


@dataclass(frozen=True)
class FlowSegment:
    """Максимальный интервал постоянного знака R(t)"""

    t_start: float
    t_end: float
    sign: int
    start_index: int
    end_index: int

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_start": self.t_start,
            "t_end": self.t_end,
            "sign": self.sign,
            "start_index": self.start_index,
            "end_index": self.end_index,
        }


@dataclass(frozen=True)
class FlowSegments:
    """
    Разбиение сетки на марковские (−1) и немарковские (+1) периоды

    Attributes:
        segments: Сегменты в порядке времени, знаки чередуются
        signs: Знак каждой точки сетки после наследования в мёртвой зоне
        a_mod: max|R|
        positive_fraction: Доля точек с R > 0
        backflow: ∫ R dt по интервалам R > 0
        degenerate: Весь ряд внутри мёртвой зоны
    """

    segments: Tuple[FlowSegment, ...]
    signs: np.ndarray
    a_mod: float
    positive_fraction: float
    backflow: float = 0.0
    degenerate: bool = False

    @property
    def n_switch(self) -> int:
        return len(self.segments) - 1

    def metrics(self) -> Dict[str, Any]:
        return {
            "n_switch": self.n_switch,
            "a_mod": self.a_mod,
            "positive_fraction": self.positive_fraction,
            "backflow": self.backflow,
            "degenerate": self.degenerate,
        }

    def to_dict(self) -> Dict[str, Any]:
        segments: List[Dict[str, Any]] = [s.to_dict() for s in self.segments]
        return {"segments": segments, "metrics": self.metrics()}
