"""
Редуцированная матрица плотности, следовое расстояние и поток информации
"""

import logging
from typing import List, Tuple

import numpy as np
from scipy import signal
from scipy.integrate import trapezoid

from chiralflow.core.domain.errors import (
    DensityMatrixError,
    GridError,
    NormalizationError,
    ShapeError,
)
from chiralflow.core.domain.flow import FlowSegment, FlowSegments, FlowSeries, ReducedDensityMatrix
from chiralflow.core.domain.state import AmplitudeState, Trajectory

logger = logging.getLogger(__name__)

NORM_DEFECT_LIMIT = 1e-6
PSD_FLOOR = 1e-9
UNIFORM_RTOL = 1e-9
DISTANCE_EXCESS_LIMIT = 2e-6


def _density_entries(c0: complex, c_n: np.ndarray) -> np.ndarray:
    v = np.concatenate([[c0], c_n])
    rho = np.outer(v, v.conj())
    rho[0, 0] = 1.0 - np.sum(np.abs(c_n) ** 2)
    return rho


def reduced_density(state: AmplitudeState) -> ReducedDensityMatrix:
    """
    ρ = (1 − Σ|c_n|²)|g⟩⟨g| + Σ(c₀c_n*|g⟩⟨n| + h.c.) + Σ c_n c_m*|n⟩⟨m|

    Населённость бани входит в проектор на |g⟩.

    Raises:
        NormalizationError: Дефект нормировки больше 1e−6
        DensityMatrixError: Матрица не положительна
    """
    defect = state.norm_defect
    if defect > NORM_DEFECT_LIMIT:
        raise NormalizationError(
            f"Дефект нормировки {defect:.3e} при t={state.t:.6g}", defect=defect, t=state.t
        )
    rho = ReducedDensityMatrix(_density_entries(state.c0, state.c_n))
    floor = -(PSD_FLOOR + defect)
    if rho.min_eigenvalue < floor:
        raise DensityMatrixError(
            f"Отрицательное собственное значение {rho.min_eigenvalue:.3e} при t={state.t:.6g}"
        )
    return rho


def _bounded_distance(D: np.ndarray) -> np.ndarray:
    excess = float(np.max(D, initial=0.0)) - 1.0
    if excess > DISTANCE_EXCESS_LIMIT:
        raise DensityMatrixError(f"Следовое расстояние превышает 1 на {excess:.3e}")
    if excess > 0.0:
        logger.debug("Следовое расстояние обрезано до 1, превышение %.3e", excess)
    return np.minimum(D, 1.0)


def trace_distance(rho1: ReducedDensityMatrix, rho2: ReducedDensityMatrix) -> float:
    """
    D = ½·Tr|ρ₁ − ρ₂|

    Raises:
        ShapeError: Размерности не совпадают
        DensityMatrixError: D больше 1 сверх допуска округления
    """
    if rho1.dim != rho2.dim:
        raise ShapeError(f"Размерности матриц {rho1.dim} и {rho2.dim} не совпадают")
    eigenvalues = np.linalg.eigvalsh(rho1.entries - rho2.entries)
    return float(_bounded_distance(np.array([0.5 * np.sum(np.abs(eigenvalues))]))[0])


def distance_series(first: Trajectory, second: Trajectory) -> np.ndarray:
    """
    D(t) для двух траекторий на одной сетке

    Матрицы собираются пакетом, проверки нормировки те же, что в reduced_density.
    """
    if first.c.shape != second.c.shape or not np.array_equal(first.t, second.t):
        raise ShapeError("Траектории должны иметь одинаковые сетки и число мод")

    for trajectory in (first, second):
        defects = trajectory.norm_defects()
        worst = int(np.argmax(defects))
        if defects[worst] > NORM_DEFECT_LIMIT:
            raise NormalizationError(
                f"Дефект нормировки {defects[worst]:.3e} при t={trajectory.t[worst]:.6g}",
                defect=float(defects[worst]),
                t=float(trajectory.t[worst]),
            )

    def stack(trajectory: Trajectory) -> np.ndarray:
        S, N = trajectory.c.shape
        v = np.concatenate([np.full((S, 1), trajectory.c0), trajectory.c], axis=1)
        rho = v[:, :, None] * v.conj()[:, None, :]
        rho[:, 0, 0] = 1.0 - np.sum(np.abs(trajectory.c) ** 2, axis=1)
        return rho

    eigenvalues = np.linalg.eigvalsh(stack(first) - stack(second))
    return _bounded_distance(0.5 * np.sum(np.abs(eigenvalues), axis=1))


def uniform_step(t: np.ndarray) -> float:
    """
    Шаг равномерной сетки

    Raises:
        GridError: Меньше трёх точек или неравномерный шаг
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.shape[0] < 3:
        raise GridError("Для производной нужно не меньше трёх точек")
    h = (t[-1] - t[0]) / (t.shape[0] - 1)
    if not h > 0 or not np.allclose(np.diff(t), h, rtol=UNIFORM_RTOL, atol=0.0):
        raise GridError("Временная сетка неравномерна")
    return float(h)


def derivative_series(D: np.ndarray, h: float) -> np.ndarray:
    """
    R = dD/dt: центральные разности внутри, односторонние второго порядка на концах
    """
    D = np.asarray(D, dtype=float)
    if D.ndim != 1 or D.shape[0] < 3:
        raise GridError("Для производной нужно не меньше трёх точек")
    if not h > 0:
        raise GridError(f"Шаг сетки должен быть положительным, получено {h}")
    return np.gradient(D, h, edge_order=2)


def _runs(signs: np.ndarray) -> List[Tuple[int, int]]:
    boundaries = np.flatnonzero(np.diff(signs)) + 1
    starts = np.concatenate([[0], boundaries])
    ends = np.concatenate([boundaries - 1, [signs.shape[0] - 1]])
    return list(zip(starts.tolist(), ends.tolist()))


def segment_flow(R: np.ndarray, t: np.ndarray, deadband: float = 1e-10) -> FlowSegments:
    """
    Разбиение R(t) на максимальные интервалы постоянного знака

    Точки с |R| ≤ deadband наследуют знак предыдущего сегмента; ведущие такие
    точки получают знак первой значимой. Если значимых точек нет, один
    сегмент со знаком +1 помечается вырожденным.

    Args:
        R: Производная следового расстояния
        t: Временная сетка той же длины
        deadband: Мёртвая зона

    Returns:
        FlowSegments с метриками n_switch, a_mod, positive_fraction, backflow
    """
    R = np.asarray(R, dtype=float)
    t = np.asarray(t, dtype=float)
    if R.shape != t.shape or R.ndim != 1 or R.size == 0:
        raise ShapeError("R и t должны быть одномерными массивами одной длины")
    if not np.all(np.isfinite(R)):
        raise GridError("Ряд R содержит неконечные значения")

    raw = np.where(R > deadband, 1, np.where(R < -deadband, -1, 0))
    significant = np.flatnonzero(raw)
    degenerate = significant.size == 0

    if degenerate:
        signs = np.ones_like(raw)
        logger.warning(f"Весь ряд R внутри мёртвой зоны {deadband:.1e}: вырожденное разбиение")
    else:
        # индекс последней значимой точки слева, ведущие берут первую значимую
        last = np.maximum.accumulate(np.where(raw != 0, np.arange(raw.size), -1))
        last[last < 0] = significant[0]
        signs = raw[last]

    segments = tuple(
        FlowSegment(
            t_start=float(t[start]),
            t_end=float(t[end]),
            sign=int(signs[start]),
            start_index=start,
            end_index=end,
        )
        for start, end in _runs(signs)
    )

    backflow = float(trapezoid(np.clip(R, 0.0, None), t)) if t.size > 1 else 0.0
    return FlowSegments(
        segments=segments,
        signs=signs,
        a_mod=float(np.max(np.abs(R))),
        positive_fraction=float(np.mean(R > 0)),
        backflow=backflow,
        degenerate=bool(degenerate),
    )


def flow_series(
    first: Trajectory, second: Trajectory, deadband: float = 1e-10
) -> Tuple[FlowSeries, FlowSegments]:
    """D(t), R(t) и разбиение на периоды для пары траекторий"""
    h = uniform_step(first.t)
    D = distance_series(first, second)
    R = derivative_series(D, h)
    series = FlowSeries(t=first.t, D=D, R=R, deadband=deadband)
    return series, segment_flow(R, first.t, deadband)


def backflow_measure(series: FlowSeries) -> float:
    """∫ R dt по интервалам R > 0"""
    return float(trapezoid(np.clip(series.R, 0.0, None), series.t))


def dominant_period(R: np.ndarray, h: float) -> float:
    """
    Период по пику дискретного спектра R без постоянной составляющей

    Returns:
        Период; inf, если спектр пуст
    """
    R = np.asarray(R, dtype=float)
    spectrum = np.abs(np.fft.rfft(R - np.mean(R)))
    frequencies = np.fft.rfftfreq(R.shape[0], d=h)
    if spectrum.shape[0] < 2 or np.max(spectrum[1:]) == 0.0:
        return float("inf")
    peak = 1 + int(np.argmax(spectrum[1:]))
    return float(1.0 / frequencies[peak])


def cross_correlation_lag(R1: np.ndarray, R2: np.ndarray, h: float) -> float:
    """
    Сдвиг R2 относительно R1 по максимуму взаимной корреляции

    Положительное значение: R2 запаздывает относительно R1.
    """
    a = np.asarray(R1, dtype=float)
    b = np.asarray(R2, dtype=float)
    if a.shape != b.shape:
        raise ShapeError("Ряды должны иметь одинаковую длину")
    a = (a - a.mean()) / (a.std() or 1.0)
    b = (b - b.mean()) / (b.std() or 1.0)
    correlation = signal.correlate(a, b, mode="full")
    lags = signal.correlation_lags(a.shape[0], b.shape[0], mode="full")
    return float(-lags[int(np.argmax(correlation))] * h)
