"""
Точная эволюция полного вектора амплитуд (c_n, f_k)

Два независимых метода: адаптивный Рунге-Кутта (DOP853) и распространение
через собственное разложение вещественно-симметричной матрицы связи.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.integrate import solve_ivp

from chiralflow.core.domain.bath import BathModes
from chiralflow.core.domain.chain import SystemSpectrum
from chiralflow.core.domain.errors import (
    EigensolverError,
    IntegrationError,
    NormalizationError,
    ShapeError,
)
from chiralflow.core.domain.state import AmplitudeState, EvolveConfig, Frame, Trajectory

logger = logging.getLogger(__name__)

INIT_NORM_TOL = 1e-12


def _check_shapes(state: AmplitudeState, spectrum: SystemSpectrum, modes: BathModes) -> None:
    if state.c_n.shape[0] != spectrum.N:
        raise ShapeError(f"c_n длины {state.c_n.shape[0]}, спектр задаёт N={spectrum.N}")
    if state.f_k.shape[0] != modes.k_max:
        raise ShapeError(f"f_k длины {state.f_k.shape[0]}, баня задаёт k_max={modes.k_max}")


def coupling_matrix(spectrum: SystemSpectrum, modes: BathModes) -> np.ndarray:
    """
    Вещественно-симметричная матрица (N + k_max) × (N + k_max)

    Диагональ (ω_n, ω_k); блок связи H[n, N+k] = g_k для каждого n.
    """
    N, K = spectrum.N, modes.k_max
    H = np.zeros((N + K, N + K))
    H[np.arange(N), np.arange(N)] = spectrum.omega_n
    H[N + np.arange(K), N + np.arange(K)] = modes.omega_k
    H[:N, N:] = modes.g_k[None, :]
    H[N:, :N] = modes.g_k[:, None]
    return H


def effective_energy(state: AmplitudeState, H: np.ndarray) -> float:
    """⟨H_eff⟩ = Re(x†Hx) для x = (c_n, f_k) в лабораторной картине"""
    x = np.concatenate([state.c_n, state.f_k])
    if x.shape[0] != H.shape[0]:
        raise ShapeError(f"Вектор длины {x.shape[0]} не согласован с матрицей {H.shape}")
    return float(np.real(np.vdot(x, H @ x)))


def _lab_derivative(
    c: np.ndarray, f: np.ndarray, omega_n: np.ndarray, modes: BathModes
) -> Tuple[np.ndarray, np.ndarray]:
    dc = -1j * (omega_n * c + np.dot(modes.g_k, f))
    df = -1j * (modes.omega_k * f + modes.g_k * np.sum(c))
    return dc, df


def _gauged_derivative(
    t: float, c: np.ndarray, f: np.ndarray, omega_n: np.ndarray, modes: BathModes
) -> Tuple[np.ndarray, np.ndarray]:
    phase_n = np.exp(1j * omega_n * t)
    phase_k = np.exp(1j * modes.omega_k * t)
    dc = -1j * phase_n * np.dot(modes.g_k, f / phase_k)
    df = -1j * modes.g_k * phase_k * np.sum(c / phase_n)
    return dc, df


def rhs(
    state: AmplitudeState, spectrum: SystemSpectrum, modes: BathModes
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Производные (dc_n/dt, df_k/dt) в картине состояния

    Лабораторная: dc_n/dt = −i(ω_n c_n + Σ_k g_k f_k), df_k/dt = −i(ω_k f_k + g_k Σ_m c_m).
    Калибровочная: те же уравнения для c_n e^{iω_n t}, f_k e^{iω_k t}.

    Raises:
        ShapeError: Длины массивов не согласованы со спектром и баней
    """
    _check_shapes(state, spectrum, modes)
    if state.frame == Frame.LAB:
        return _lab_derivative(state.c_n, state.f_k, spectrum.omega_n, modes)
    return _gauged_derivative(state.t, state.c_n, state.f_k, spectrum.omega_n, modes)


def _check_initial(init: AmplitudeState) -> None:
    defect = init.norm_defect
    if defect >= INIT_NORM_TOL:
        raise NormalizationError(
            f"Начальное состояние не нормировано: дефект {defect:.3e}", defect=defect, t=init.t
        )


def evolve_ode(
    init: AmplitudeState,
    cfg: EvolveConfig,
    spectrum: SystemSpectrum,
    modes: BathModes,
) -> Trajectory:
    """
    Интегрирование уравнений амплитуд адаптивным методом DOP853

    Args:
        init: Начальное состояние (t=0)
        cfg: Сетка, допуски и картина
        spectrum: Спектр кольца
        modes: Моды бани

    Returns:
        Траектория в картине cfg.frame

    Raises:
        NormalizationError: Начальное состояние не нормировано
        IntegrationError: Интегратор остановился раньше t_max
    """
    _check_shapes(init, spectrum, modes)
    _check_initial(init)

    N = spectrum.N
    omega_n = spectrum.omega_n
    grid = cfg.grid
    y0 = np.concatenate([init.c_n, init.f_k]).astype(complex)

    if cfg.frame == Frame.LAB:
        H = coupling_matrix(spectrum, modes)

        def fun(t, y):
            return -1j * (H @ y)

    else:

        def fun(t, y):
            dc, df = _gauged_derivative(t, y[:N], y[N:], omega_n, modes)
            return np.concatenate([dc, df])

    logger.debug(
        f"DOP853: размерность {y0.shape[0]}, t_max={cfg.t_max}, rtol={cfg.rel_tol}, "
        f"atol={cfg.abs_tol}, картина {cfg.frame.value}"
    )
    solution = solve_ivp(
        fun,
        (0.0, cfg.t_max),
        y0,
        method="DOP853",
        t_eval=grid,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
    )
    if not solution.success:
        t_reached = float(solution.t[-1]) if solution.t.size else 0.0
        raise IntegrationError(
            f"Интегратор остановился на t={t_reached:.6g}: {solution.message}", t_reached=t_reached
        )

    Y = solution.y.T
    trajectory = Trajectory(t=grid, c0=init.c0, c=Y[:, :N], f=Y[:, N:], frame=cfg.frame)

    max_defect = float(np.max(trajectory.norm_defects()))
    if max_defect > 100.0 * cfg.rel_tol:
        logger.warning(
            f"Дефект нормировки {max_defect:.3e} превышает 100·rel_tol={100.0 * cfg.rel_tol:.1e}"
        )
    logger.debug(f"DOP853: {solution.nfev} вычислений правой части, дефект {max_defect:.3e}")
    return trajectory


def evolve_eig(
    init: AmplitudeState,
    cfg: EvolveConfig,
    spectrum: SystemSpectrum,
    modes: BathModes,
) -> Trajectory:
    """
    Точное распространение exp(−iHt)·x₀ через разложение H = VΛVᵀ

    Args:
        init: Начальное состояние (t=0)
        cfg: Сетка и картина
        spectrum: Спектр кольца
        modes: Моды бани

    Returns:
        Траектория в картине cfg.frame; при t=0 совпадает с init

    Raises:
        NormalizationError: Начальное состояние не нормировано
        EigensolverError: Собственное разложение не сошлось
    """
    _check_shapes(init, spectrum, modes)
    _check_initial(init)

    N = spectrum.N
    H = coupling_matrix(spectrum, modes)
    try:
        energies, V = scipy.linalg.eigh(H)
    except (np.linalg.LinAlgError, ValueError) as e:
        report = {
            "dimension": float(H.shape[0]),
            "frobenius_norm": float(np.linalg.norm(H)),
            "diag_min": float(np.min(np.diag(H))),
            "diag_max": float(np.max(np.diag(H))),
        }
        raise EigensolverError(f"Собственное разложение не сошлось: {e}", report) from e

    grid = cfg.grid
    x0 = np.concatenate([init.c_n, init.f_k]).astype(complex)
    coefficients = V.T @ x0
    phases = np.exp(-1j * np.outer(grid, energies))
    X = (phases * coefficients[None, :]) @ V.T
    X[grid == 0.0] = x0

    trajectory = Trajectory(t=grid, c0=init.c0, c=X[:, :N], f=X[:, N:], frame=Frame.LAB)
    logger.debug(
        f"eigh: размерность {H.shape[0]}, спектр в [{energies[0]:.4f}, {energies[-1]:.4f}]"
    )
    return trajectory.to_frame(cfg.frame, spectrum.omega_n, modes.omega_k)
