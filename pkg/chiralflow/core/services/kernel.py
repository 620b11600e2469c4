"""
Уравнение с экспоненциальным ядром памяти и его интегрирование

Интеграл свёртки ∫₀ᵗ e^{−z_m(t−t₁)} c_m(t₁)dt₁ заменяется вспомогательной
переменной y_m с dy_m/dt = −z_m y_m + c_m, что точно для экспоненциального ядра.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from chiralflow.core.domain.bath import BathParams
from chiralflow.core.domain.chain import SystemSpectrum
from chiralflow.core.domain.errors import (
    IntegrationError,
    NormalizationError,
    ParameterError,
    ShapeError,
)
from chiralflow.core.domain.kernel import KernelParams, KernelVariant, LaplaceSystem
from chiralflow.core.domain.state import Frame, Trajectory

logger = logging.getLogger(__name__)


def kernel_params_from(
    bath: BathParams,
    spectrum: SystemSpectrum,
    variant: KernelVariant = KernelVariant.OFF_DIAGONAL_AS_PRINTED,
) -> KernelParams:
    """Параметры ядра, согласованные с дискретной баней; ω_g = E_g/ħ"""
    if bath.omega_c is None:
        raise ParameterError("Центр бани должен быть разрешён до построения ядра")
    return KernelParams(
        gamma0=bath.gamma0,
        lam=bath.lam,
        omega_c=bath.omega_c,
        omega_m=spectrum.omega_n,
        variant=variant,
        omega_g=spectrum.E_g,
    )


def memory_kernel(m: int, dt: float, p: KernelParams) -> complex:
    """
    f_m(dt) = −(γ₀λ/2)·exp[−(i(ω_m+ω_c)+λ)·|dt|]

    Для dt ≥ 0 запаздывающая ветвь, для dt < 0 опережающая.

    Args:
        m: Номер моды 1..N
        dt: Разность времён
        p: Параметры ядра
    """
    rate = 1j * (p.omega_m[m - 1] + p.omega_c) + p.lam
    return complex(-p.amplitude * np.exp(-rate * abs(dt)))


def laplace_system(p: KernelParams) -> LaplaceSystem:
    """
    Линейная форма варианта: (κ, ν, z, W)

    OffDiagonalAsPrinted: κ = −i·a, z_m = λ + i(ω_m + ω_c), сумма m≠n.
    FullSumAsPrinted: κ = −a, z_m = λ + i(ω_g + ω_m − ω_c), сумма по всем m.
    LaplaceAsPrinted: κ = −a, z как в OffDiagonalAsPrinted, сумма m≠n.
    ContinuumLimit: ν_n = ω_n, κ = −a, z_m = λ + iω_c, сумма по всем m.
    """
    a = p.amplitude
    N = p.N
    off_diagonal = np.ones((N, N)) - np.eye(N)
    full = np.ones((N, N))
    nu = np.zeros(N)
    frame = Frame.GAUGED

    if p.variant == KernelVariant.OFF_DIAGONAL_AS_PRINTED:
        kappa = -1j * a
        z = p.lam + 1j * (p.omega_m + p.omega_c)
        coupling = off_diagonal
    elif p.variant == KernelVariant.FULL_SUM_AS_PRINTED:
        kappa = complex(-a)
        z = p.lam + 1j * (p.omega_g + p.omega_m - p.omega_c)
        coupling = full
    elif p.variant == KernelVariant.LAPLACE_AS_PRINTED:
        kappa = complex(-a)
        z = p.lam + 1j * (p.omega_m + p.omega_c)
        coupling = off_diagonal
    else:
        kappa = complex(-a)
        z = np.full(N, p.lam + 1j * p.omega_c)
        coupling = full
        nu = np.array(p.omega_m, dtype=float)
        frame = Frame.LAB

    return LaplaceSystem(
        kappa=complex(kappa),
        nu=nu,
        z=np.asarray(z, dtype=complex),
        coupling=coupling,
        frame=frame,
    )


def integrate_memory_system(
    c_init: np.ndarray,
    p: KernelParams,
    t_grid: np.ndarray,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Интегрирование системы (c, y) на заданной сетке

    Returns:
        (c, y) формы (S, N) каждый; y_m(0) = 0

    Raises:
        IntegrationError: Сбой интегратора
    """
    c_init = np.asarray(c_init, dtype=complex)
    if c_init.shape != (p.N,):
        raise ShapeError(f"c_init формы {c_init.shape}, ядро задаёт N={p.N}")

    system = laplace_system(p)
    L = system.generator()
    x0 = np.concatenate([c_init, np.zeros(p.N, dtype=complex)])
    t_grid = np.asarray(t_grid, dtype=float)

    solution = solve_ivp(
        lambda t, x: L @ x,
        (float(t_grid[0]), float(t_grid[-1])),
        x0,
        method="DOP853",
        t_eval=t_grid,
        rtol=rel_tol,
        atol=abs_tol,
    )
    if not solution.success:
        t_reached = float(solution.t[-1]) if solution.t.size else float(t_grid[0])
        raise IntegrationError(
            f"Интегратор ядра остановился на t={t_reached:.6g}: {solution.message}",
            t_reached=t_reached,
        )
    X = solution.y.T
    return X[:, : p.N], X[:, p.N :]


def evolve_volterra(
    c_init: np.ndarray,
    p: KernelParams,
    t_max: float,
    n_samples: int,
    c0: Optional[complex] = None,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
) -> Trajectory:
    """
    Траектория c_n(t) уравнения с ядром памяти

    Args:
        c_init: Начальные амплитуды возбуждённого сектора
        p: Параметры ядра и вариант уравнения
        t_max: Конец сетки
        n_samples: Число точек равномерной сетки
        c0: Амплитуда основного состояния; по умолчанию sqrt(1 − Σ|c_n|²)
        rel_tol: Относительный допуск DOP853
        abs_tol: Абсолютный допуск DOP853

    Returns:
        Траектория без амплитуд бани (f=None)

    Raises:
        NormalizationError: Σ|c_n|² > 1
        IntegrationError: Сбой интегратора
    """
    c_init = np.asarray(c_init, dtype=complex)
    excited = float(np.sum(np.abs(c_init) ** 2))
    if excited > 1.0 + 1e-12:
        raise NormalizationError(
            f"Населённость возбуждённого сектора {excited:.6g} > 1", defect=excited - 1.0
        )
    if c0 is None:
        c0 = np.sqrt(max(0.0, 1.0 - excited))

    grid = np.linspace(0.0, t_max, int(n_samples))
    c, _ = integrate_memory_system(c_init, p, grid, rel_tol=rel_tol, abs_tol=abs_tol)
    logger.debug(f"Ядро {p.variant.value}: N={p.N}, t_max={t_max}, max|c|={np.max(np.abs(c)):.4g}")
    return Trajectory(t=grid, c0=c0, c=c, f=None, frame=laplace_system(p).frame)
