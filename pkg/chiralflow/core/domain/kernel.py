"""
Доменные модели уравнения с ядром памяти и его лапласовского решения
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from chiralflow.core.domain.errors import ParameterError
from chiralflow.core.domain.state import Frame


class KernelVariant(str, Enum):
    """Варианты замкнутого уравнения для c_n(t)"""

    # i dc_n/dt = −Σ_{m≠n} ∫ f_m c_m, фаза ω_m + ω_c
    OFF_DIAGONAL_AS_PRINTED = "off_diagonal_as_printed"
    # dc_n/dt = −Σ_m ∫ K_m c_m, фаза ω_g + ω_m − ω_c
    FULL_SUM_AS_PRINTED = "full_sum_as_printed"
    # p c_n − c_n(0) = Σ_{m≠n} f_m(p) c_m(p), без множителя i
    LAPLACE_AS_PRINTED = "laplace_as_printed"
    # точное исключение лоренцевой бани из уравнений в лабораторной картине
    CONTINUUM_LIMIT = "continuum_limit"


@dataclass(frozen=True)
class KernelParams:
    """Параметры ядра памяти для N каналов"""

    gamma0: float
    lam: float
    omega_c: float
    omega_m: np.ndarray
    variant: KernelVariant = KernelVariant.OFF_DIAGONAL_AS_PRINTED
    omega_g: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma0) and self.gamma0 >= 0):
            raise ParameterError(f"gamma0 должен быть >= 0, получено {self.gamma0}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ParameterError(f"lambda должна быть > 0, получено {self.lam}")
        omega_m = np.array(self.omega_m, dtype=float)
        if omega_m.ndim != 1 or omega_m.size < 1:
            raise ParameterError("omega_m должен быть непустым одномерным массивом")
        omega_m.setflags(write=False)
        object.__setattr__(self, "omega_m", omega_m)
        object.__setattr__(self, "variant", KernelVariant(self.variant))

    @property
    def N(self) -> int:
        return int(self.omega_m.shape[0])

    @property
    def amplitude(self) -> float:
        """γ₀λ/2"""
        return 0.5 * self.gamma0 * self.lam

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma0": self.gamma0,
            "lambda": self.lam,
            "omega_c": self.omega_c,
            "omega_m": self.omega_m.tolist(),
            "variant": self.variant.value,
            "omega_g": self.omega_g,
        }


@dataclass(frozen=True)
class LaplaceSystem:
    """
    Общая линейная форма всех вариантов:
    dc_n/dt = −iν_n c_n + κ Σ_m W_nm y_m,  dy_m/dt = −z_m y_m + c_m
    """

    kappa: complex
    nu: np.ndarray
    z: np.ndarray
    coupling: np.ndarray
    frame: Frame

    @property
    def N(self) -> int:
        return int(self.nu.shape[0])

    def generator(self) -> np.ndarray:
        """Матрица линейной системы для вектора (c, y)"""
        N = self.N
        L = np.zeros((2 * N, 2 * N), dtype=complex)
        L[:N, :N] = np.diag(-1j * self.nu)
        L[:N, N:] = self.kappa * self.coupling
        L[N:, :N] = np.eye(N)
        L[N:, N:] = np.diag(-self.z)
        return L


@dataclass(frozen=True)
class PoleCancellation:
    """Совпадение полюса с нулём числителя канала"""

    channel: int
    pole: complex
    order: int


@dataclass(frozen=True)
class RationalSolution:
    """
    Разложение c_i(p) = N_i(p)/Q(p) по полюсам

    time_coefficients[i, j, k]: коэффициент при t^k·e^{p_j t} в c_i(t);
    residues[i, j]: вычет c_i(p) в полюсе p_j.
    """

    poles: np.ndarray
    multiplicities: np.ndarray
    residues: np.ndarray
    time_coefficients: np.ndarray
    denominator: np.ndarray
    numerators: np.ndarray
    frame: Frame = Frame.GAUGED
    unstable_poles: Tuple[complex, ...] = ()
    cancellations: Tuple[PoleCancellation, ...] = field(default_factory=tuple)

    @property
    def degree(self) -> int:
        return int(self.denominator.shape[0] - 1)

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        """c_i(t) на сетке, форма (S, N)"""
        t = np.asarray(t, dtype=float)
        max_order = self.time_coefficients.shape[2]
        powers = np.stack([t**k for k in range(max_order)], axis=1)
        exponentials = np.exp(np.outer(t, self.poles))
        # (S, J, K) · (N, J, K) → (S, N)
        weights = exponentials[:, :, None] * powers[:, None, :]
        return np.einsum("sjk,ijk->si", weights, self.time_coefficients)

    def to_dict(self) -> Dict[str, Any]:
        def pair(value: complex) -> List[float]:
            return [float(np.real(value)), float(np.imag(value))]

        return {
            "degree": self.degree,
            "poles": [pair(p) for p in self.poles],
            "multiplicities": [int(m) for m in self.multiplicities],
            "residues": [[pair(r) for r in channel] for channel in self.residues],
            "unstable_poles": [pair(p) for p in self.unstable_poles],
            "cancellations": [
                {"channel": c.channel + 1, "pole": pair(c.pole), "order": c.order}
                for c in self.cancellations
            ],
            "frame": self.frame.value,
        }
