"""
Доменные модели магнонного резервуара
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from chiralflow.core.domain.errors import ParameterError

PRNG_ID = "numpy.random.PCG64"


class SamplingScheme(str, Enum):
    """Схемы выборки частот мод бани"""

    IID_UNIFORM = "iid_uniform"
    JITTERED_GRID = "jittered_grid"


@dataclass(frozen=True)
class BathParams:
    """
    Параметры лоренцевой спектральной плотности и её дискретизации

    omega_c = None означает «центр по кольцу без поля», его разрешает сервис bath.
    window_halfwidth задаётся в единицах lam.
    """

    gamma0: float = 1.0
    lam: float = 0.1
    omega_c: Optional[float] = None
    k_max: int = 200
    window_halfwidth: float = 20.0
    seed: int = 0
    scheme: SamplingScheme = SamplingScheme.IID_UNIFORM
    jitter: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma0) and self.gamma0 >= 0):
            raise ParameterError(f"gamma0 должен быть >= 0, получено {self.gamma0}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ParameterError(f"lambda должна быть > 0, получено {self.lam}")
        if self.omega_c is not None and not math.isfinite(self.omega_c):
            raise ParameterError(f"omega_c должна быть конечной, получено {self.omega_c}")
        if isinstance(self.k_max, bool) or int(self.k_max) != self.k_max or self.k_max < 1:
            raise ParameterError(f"k_max должен быть целым >= 1, получено {self.k_max}")
        if not (math.isfinite(self.window_halfwidth) and self.window_halfwidth > 0):
            raise ParameterError(
                f"window_halfwidth должна быть > 0, получено {self.window_halfwidth}"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise ParameterError(f"seed должен быть 64-битным беззнаковым, получено {self.seed}")
        if not 0.0 <= self.jitter <= 1.0:
            raise ParameterError(f"jitter должен лежать в [0, 1], получено {self.jitter}")
        object.__setattr__(self, "scheme", SamplingScheme(self.scheme))

    @property
    def half_window(self) -> float:
        """Полуширина окна W в частотных единицах"""
        return self.window_halfwidth * self.lam

    def with_center(self, omega_c: float) -> "BathParams":
        return replace(self, omega_c=float(omega_c))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma0": self.gamma0,
            "lambda": self.lam,
            "omega_c": self.omega_c,
            "k_max": int(self.k_max),
            "window_halfwidth": self.window_halfwidth,
            "seed": int(self.seed),
            "scheme": self.scheme.value,
            "jitter": self.jitter,
            "prng": PRNG_ID,
        }


@dataclass(frozen=True)
class BathModes:
    """Дискретный набор магнонных мод (ω_k, g_k)"""

    omega_k: np.ndarray
    g_k: np.ndarray

    def __post_init__(self):
        omega = np.array(self.omega_k, dtype=float)
        g = np.array(self.g_k, dtype=float)
        if omega.ndim != 1 or omega.shape != g.shape:
            raise ParameterError("omega_k и g_k должны быть одномерными массивами равной длины")
        if np.any(g < 0) or not np.all(np.isfinite(g)):
            raise ParameterError("Константы связи g_k должны быть конечными и неотрицательными")
        omega.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "omega_k", omega)
        object.__setattr__(self, "g_k", g)

    @property
    def k_max(self) -> int:
        return int(self.omega_k.shape[0])

    @property
    def coupling_mass(self) -> float:
        """Σ_k g_k²"""
        return float(np.sum(self.g_k**2))

    @classmethod
    def uncoupled(cls, omega_k: np.ndarray) -> "BathModes":
        """Баня с нулевыми связями (замкнутая система)"""
        omega = np.asarray(omega_k, dtype=float)
        return cls(omega_k=omega, g_k=np.zeros_like(omega))
