"""
Доменные модели амплитуд волновой функции и траекторий
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from chiralflow.core.domain.errors import ParameterError, ShapeError


class Frame(str, Enum):
    """Картина, в которой записаны амплитуды"""

    LAB = "lab"
    GAUGED = "gauged"


class EvolveMethod(str, Enum):
    """Способ точной эволюции полного вектора амплитуд"""

    ADAPTIVE_RK = "adaptive_rk"
    EIGEN_PROPAGATE = "eigen_propagate"


@dataclass(frozen=True)
class EvolveConfig:
    """Параметры выходной сетки и интегратора"""

    t_max: float = 50.0
    n_samples: int = 2001
    method: EvolveMethod = EvolveMethod.EIGEN_PROPAGATE
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    frame: Frame = Frame.LAB

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ParameterError(f"t_max должен быть > 0, получено {self.t_max}")
        if int(self.n_samples) != self.n_samples or self.n_samples < 2:
            raise ParameterError(f"n_samples должен быть целым >= 2, получено {self.n_samples}")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("Допуски интегратора должны быть положительными")
        object.__setattr__(self, "method", EvolveMethod(self.method))
        object.__setattr__(self, "frame", Frame(self.frame))

    @property
    def grid(self) -> np.ndarray:
        """Равномерная выходная сетка на [0, t_max]"""
        return np.linspace(0.0, self.t_max, int(self.n_samples))

    @property
    def step(self) -> float:
        return self.t_max / (int(self.n_samples) - 1)


@dataclass(frozen=True)
class AmplitudeState:
    """
    Амплитуды анзаца (c₀, c_n, f_k) в момент t

    Для ядерных движков амплитуды бани не отслеживаются (bath_tracked=False):
    населённость бани тогда выводится из условия нормировки.
    """

    t: float
    c0: complex
    c_n: np.ndarray
    f_k: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    frame: Frame = Frame.LAB
    bath_tracked: bool = True

    def __post_init__(self):
        c_n = np.array(self.c_n, dtype=complex)
        f_k = np.array(self.f_k, dtype=complex)
        if c_n.ndim != 1 or f_k.ndim != 1:
            raise ShapeError("c_n и f_k должны быть одномерными")
        c_n.setflags(write=False)
        f_k.setflags(write=False)
        object.__setattr__(self, "c_n", c_n)
        object.__setattr__(self, "f_k", f_k)
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "frame", Frame(self.frame))

    @property
    def excited_population(self) -> float:
        return float(np.sum(np.abs(self.c_n) ** 2))

    @property
    def bath_population(self) -> float:
        if self.bath_tracked:
            return float(np.sum(np.abs(self.f_k) ** 2))
        return 1.0 - abs(self.c0) ** 2 - self.excited_population

    @property
    def norm(self) -> float:
        return abs(self.c0) ** 2 + self.excited_population + self.bath_population

    @property
    def norm_defect(self) -> float:
        """|1 − норма| для отслеживаемой бани, дефицит населённости бани иначе"""
        if self.bath_tracked:
            return abs(self.norm - 1.0)
        return max(0.0, -self.bath_population)

    @classmethod
    def from_system(
        cls,
        c0: complex,
        c_n: np.ndarray,
        k_max: int,
        frame: Frame = Frame.LAB,
    ) -> "AmplitudeState":
        """Начальное состояние: баня в вакууме"""
        return cls(t=0.0, c0=c0, c_n=c_n, f_k=np.zeros(k_max, dtype=complex), frame=frame)


@dataclass(frozen=True)
class Trajectory:
    """
    Траектория на равномерной сетке

    Массивы: t (S,), c (S, N), f (S, K) или None для ядерных движков.
    Индексация и итерация выдают AmplitudeState.
    """

    t: np.ndarray
    c0: complex
    c: np.ndarray
    f: Optional[np.ndarray] = None
    frame: Frame = Frame.LAB

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        c = np.array(self.c, dtype=complex)
        if c.ndim != 2 or c.shape[0] != t.shape[0]:
            raise ShapeError(f"Форма c {c.shape} не согласована с сеткой из {t.shape[0]} точек")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c0", complex(self.c0))
        if self.f is not None:
            f = np.array(self.f, dtype=complex)
            if f.ndim != 2 or f.shape[0] != t.shape[0]:
                raise ShapeError("Форма f не согласована с сеткой")
            object.__setattr__(self, "f", f)

    def __len__(self) -> int:
        return int(self.t.shape[0])

    def __getitem__(self, index: int) -> AmplitudeState:
        if self.f is None:
            return AmplitudeState(
                t=float(self.t[index]),
                c0=self.c0,
                c_n=self.c[index],
                frame=self.frame,
                bath_tracked=False,
            )
        return AmplitudeState(
            t=float(self.t[index]),
            c0=self.c0,
            c_n=self.c[index],
            f_k=self.f[index],
            frame=self.frame,
        )

    def __iter__(self) -> Iterator[AmplitudeState]:
        for index in range(len(self)):
            yield self[index]

    @property
    def bath_tracked(self) -> bool:
        return self.f is not None

    def norm_defects(self) -> np.ndarray:
        """Дефект нормировки в каждой точке сетки"""
        excited = np.sum(np.abs(self.c) ** 2, axis=1)
        if self.f is None:
            return np.maximum(0.0, excited + abs(self.c0) ** 2 - 1.0)
        bath = np.sum(np.abs(self.f) ** 2, axis=1)
        return np.abs(abs(self.c0) ** 2 + excited + bath - 1.0)

    def to_frame(
        self,
        target: Frame,
        omega_n: np.ndarray,
        omega_k: Optional[np.ndarray] = None,
    ) -> "Trajectory":
        """Пересчёт амплитуд между картинами: c_lab = e^{−iω t}·c_gauged"""
        target = Frame(target)
        if target == self.frame:
            return self
        sign = -1.0 if target == Frame.LAB else 1.0
        phase_c = np.exp(sign * 1j * np.outer(self.t, omega_n))
        f = None
        if self.f is not None:
            if omega_k is None:
                raise ShapeError("Для пересчёта f_k нужны частоты omega_k")
            f = self.f * np.exp(sign * 1j * np.outer(self.t, omega_k))
        return Trajectory(t=self.t, c0=self.c0, c=self.c * phase_c, f=f, frame=target)
