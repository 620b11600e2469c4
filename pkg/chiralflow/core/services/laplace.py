"""
Лапласовское решение уравнения с ядром памяти

c(p) находится правилом Крамера из M(p)c(p) = c(0), где
M(p) = diag(p + iν_n) − κ·W·diag(1/(p + z_m)). После умножения столбцов
на (p + z_m) все элементы полиномиальны: c_i(p) = N_i(p)/Q(p),
deg Q = 2N, deg N_i = 2N − 1. Обратное преобразование равно сумме вычетов.
"""

import itertools
import logging
import math
from typing import List, Sequence, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.linalg
from scipy.cluster.hierarchy import linkage

from chiralflow.core.domain.errors import EigensolverError, ParameterError, ShapeError
from chiralflow.core.domain.kernel import KernelParams, PoleCancellation, RationalSolution
from chiralflow.core.domain.state import Trajectory
from chiralflow.core.services.kernel import laplace_system

logger = logging.getLogger(__name__)

MAX_CRAMER_N = 6
UNSTABLE_TOL = 1e-8
# запас на обратную ошибку собственных значений матрицы-компаньона
ROOT_SAFETY = 1e3

PolyMatrix = List[List[np.ndarray]]


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _poly_det(entries: PolyMatrix) -> np.ndarray:
    """Определитель полиномиальной матрицы разложением Лейбница (коэффициенты от младших)"""
    size = len(entries)
    total = np.zeros(1, dtype=complex)
    for perm in itertools.permutations(range(size)):
        term = np.ones(1, dtype=complex)
        for row, col in enumerate(perm):
            term = npoly.polymul(term, entries[row][col])
        total = npoly.polyadd(total, _permutation_sign(perm) * term)
    return total


def _highest_first(low_first: np.ndarray, degree: int) -> np.ndarray:
    padded = np.zeros(degree + 1, dtype=complex)
    low_first = np.asarray(low_first, dtype=complex)[: degree + 1]
    padded[: low_first.shape[0]] = low_first
    return padded[::-1]


def _scaled_matrix(params: KernelParams) -> PolyMatrix:
    """M̃_nm(p) = δ_nm(p + iν_n)(p + z_m) − κW_nm"""
    if params.N > MAX_CRAMER_N:
        raise ParameterError(f"Правило Крамера реализовано для N <= {MAX_CRAMER_N}, N={params.N}")
    system = laplace_system(params)
    entries: PolyMatrix = []
    for n in range(system.N):
        row = []
        for m in range(system.N):
            entry = np.zeros(3, dtype=complex)
            if n == m:
                entry = npoly.polymul([1j * system.nu[n], 1.0], [system.z[m], 1.0]).astype(complex)
                entry = np.pad(entry, (0, 3 - entry.shape[0]))
            entry[0] -= system.kappa * system.coupling[n, m]
            row.append(entry)
        entries.append(row)
    return entries


def dp_numerator(params: KernelParams) -> np.ndarray:
    """
    Коэффициенты Q(p) = det M̃(p) от старшей степени, степень 2N

    Для LaplaceAsPrinted при N=3: ABC·p³ − (γ₀λ/2)²(A+B+C)p + 2(γ₀λ/2)³.
    """
    return _highest_first(_poly_det(_scaled_matrix(params)), 2 * params.N)


def cramer_numerators(params: KernelParams, c_init: np.ndarray) -> np.ndarray:
    """
    Числители N_i(p), форма (N, 2N), коэффициенты от старшей степени

    N_i = det M̃ со столбцом i, заменённым на c(0)·(p + z_i).
    """
    c_init = np.asarray(c_init, dtype=complex)
    if c_init.shape != (params.N,):
        raise ShapeError(f"c_init формы {c_init.shape}, ядро задаёт N={params.N}")
    system = laplace_system(params)
    base = _scaled_matrix(params)
    numerators = np.zeros((params.N, 2 * params.N), dtype=complex)
    for i in range(params.N):
        entries = [list(row) for row in base]
        for n in range(params.N):
            entries[n][i] = c_init[n] * np.array([system.z[i], 1.0], dtype=complex)
        numerators[i] = _highest_first(_poly_det(entries), 2 * params.N - 1)
    return numerators


def build_Dp(p: complex, params: KernelParams) -> complex:
    """
    D(p) = det M(p) = Q(p)/Π_m(p + z_m)

    В нуле знаменателя возвращается значение числителя Q(p).
    """
    q = complex(np.polyval(dp_numerator(params), p))
    denominator = complex(np.prod(p + laplace_system(params).z))
    if denominator == 0:
        return q
    return q / denominator


def _taylor(coefficients: np.ndarray, center: complex, order: int) -> np.ndarray:
    """Коэффициенты Тейлора b_0..b_order многочлена в точке center"""
    out = np.zeros(order + 1, dtype=complex)
    derivative = np.asarray(coefficients, dtype=complex)
    for l in range(order + 1):
        if derivative.size == 0:
            break
        out[l] = np.polyval(derivative, center) / math.factorial(l)
        derivative = np.polyder(derivative) if derivative.size > 1 else np.zeros(0, dtype=complex)
    return out


def _evaluation_scale(coefficients: np.ndarray, center: complex) -> float:
    degree = coefficients.shape[0] - 1
    radius = max(1.0, abs(center))
    return float(np.sum(np.abs(coefficients) * radius ** np.arange(degree, -1, -1)))


def _merge_radius(coefficients: np.ndarray, center: complex, mult: int, eps: float) -> float:
    """
    Радиус, в котором μ корней неотличимы от одного кратного корня

    Возмущение δ многочлена расщепляет μ-кратный корень на ~(δ/|b_μ|)^{1/μ}.
    """
    relative = eps * max(1.0, abs(center))
    b_mult = abs(_taylor(coefficients, center, mult)[mult])
    if b_mult == 0.0:
        return math.inf
    delta = ROOT_SAFETY * np.finfo(float).eps * _evaluation_scale(coefficients, center)
    return max(relative, (delta / b_mult) ** (1.0 / mult))


def _cluster_roots(roots: np.ndarray, coefficients: np.ndarray, eps: float) -> List[List[int]]:
    """Разбиение корней на кластеры: спуск по дендрограмме одиночной связи"""
    count = roots.shape[0]
    if count == 1:
        return [[0]]

    points = np.column_stack([roots.real, roots.imag])
    tree = linkage(points, method="single")
    children = {count + i: (int(tree[i, 0]), int(tree[i, 1])) for i in range(count - 1)}

    def leaves(node: int) -> List[int]:
        if node < count:
            return [node]
        left, right = children[node]
        return leaves(left) + leaves(right)

    groups: List[List[int]] = []
    stack = [2 * count - 2]
    while stack:
        node = stack.pop()
        members = leaves(node)
        if len(members) == 1:
            groups.append(members)
            continue
        center = complex(np.mean(roots[members]))
        spread = float(np.max(np.abs(roots[members] - center)))
        if spread <= _merge_radius(coefficients, center, len(members), eps):
            groups.append(members)
        else:
            stack.extend(children[node])
    return groups


def _polish(coefficients: np.ndarray, center: complex, mult: int, spread: float) -> complex:
    """Ньютон на P^{(μ−1)}: у μ-кратного корня это простой корень"""
    derivative = np.asarray(coefficients, dtype=complex)
    for _ in range(mult - 1):
        derivative = np.polyder(derivative)
    slope = np.polyder(derivative)
    limit = max(spread, 1e-12 * max(1.0, abs(center))) * 10.0
    x = center
    for _ in range(8):
        denominator = np.polyval(slope, x)
        if denominator == 0:
            break
        step = np.polyval(derivative, x) / denominator
        if abs(x - step - center) > limit:
            break
        x = x - step
        if abs(step) <= 4.0 * np.finfo(float).eps * max(1.0, abs(x)):
            break
    return complex(x)


def find_poles(
    coefficients: Sequence[complex], clustering_eps: float = 1e-8
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Корни многочлена с кратностями

    Корни находятся как собственные значения матрицы-компаньона. Близкие корни
    объединяются, если их разброс не превышает max(clustering_eps·max(1,|p|),
    радиус численного расщепления кратного корня).

    Args:
        coefficients: Коэффициенты от старшей степени
        clustering_eps: Относительный порог слияния

    Returns:
        (poles, multiplicities) в порядке (Re, Im); Σ кратностей = степень

    Raises:
        ParameterError: Нулевой старший коэффициент
        EigensolverError: Сбой собственного разложения
    """
    coefficients = np.asarray(coefficients, dtype=complex).ravel()
    if coefficients.size == 0 or coefficients[0] == 0:
        raise ParameterError("Старший коэффициент многочлена должен быть ненулевым")
    degree = coefficients.size - 1
    if degree == 0:
        return np.zeros(0, dtype=complex), np.zeros(0, dtype=int)

    nonzero = np.flatnonzero(coefficients)
    zero_roots = degree - int(nonzero[-1])
    reduced = coefficients[: coefficients.size - zero_roots]
    roots = np.zeros(zero_roots, dtype=complex)
    if reduced.size > 1:
        try:
            eigenvalues = scipy.linalg.eigvals(scipy.linalg.companion(reduced))
        except (np.linalg.LinAlgError, ValueError) as e:
            raise EigensolverError(f"Корни многочлена не найдены: {e}") from e
        if not np.all(np.isfinite(eigenvalues)):
            raise EigensolverError("Матрица-компаньон дала неконечные собственные значения")
        roots = np.concatenate([roots, eigenvalues.astype(complex)])

    poles = []
    multiplicities = []
    for members in _cluster_roots(roots, coefficients, clustering_eps):
        center = complex(np.mean(roots[members]))
        spread = float(np.max(np.abs(roots[members] - center)))
        poles.append(_polish(coefficients, center, len(members), spread))
        multiplicities.append(len(members))

    poles_array = np.array(poles, dtype=complex)
    order = np.lexsort((poles_array.imag, np.round(poles_array.real, 12)))
    return poles_array[order], np.array(multiplicities, dtype=int)[order]


def _series_inverse(series: np.ndarray) -> np.ndarray:
    """1/b(h) как ряд той же длины, b_0 ≠ 0"""
    inverse = np.zeros_like(series)
    inverse[0] = 1.0 / series[0]
    for n in range(1, series.shape[0]):
        inverse[n] = -np.dot(series[1 : n + 1], inverse[n - 1 :: -1][:n]) / series[0]
    return inverse


def residue_expansion(
    c_init: np.ndarray,
    params: KernelParams,
    clustering_eps: float = 1e-8,
) -> RationalSolution:
    """
    Разложение c_i(p) = N_i(p)/Q(p) по полюсам

    В полюсе кратности μ вычет e^{pt}N_i/Q равен коэффициенту при h^{μ−1} в
    e^{(p_j+h)t}·N_i(p_j+h)/Q_j(p_j+h), Q = h^μ·Q_j. Ряды считаются точно.
    Нули числителя в полюсе (в пределах clustering_eps) обнуляются и
    попадают в отчёт о сокращениях.

    Args:
        c_init: Начальные амплитуды c_n(0)
        params: Параметры ядра
        clustering_eps: Порог слияния корней и сокращения

    Returns:
        RationalSolution
    """
    c_init = np.asarray(c_init, dtype=complex)
    system = laplace_system(params)
    denominator = dp_numerator(params)
    numerators = cramer_numerators(params, c_init)
    poles, multiplicities = find_poles(denominator, clustering_eps)

    N = params.N
    max_mult = int(multiplicities.max())
    time_coefficients = np.zeros((N, poles.shape[0], max_mult), dtype=complex)
    residues = np.zeros((N, poles.shape[0]), dtype=complex)
    cancellations: List[PoleCancellation] = []

    for j, (pole, mult) in enumerate(zip(poles, multiplicities)):
        mult = int(mult)
        inverse = _series_inverse(_taylor(denominator, pole, 2 * mult - 1)[mult:])
        for i in range(N):
            series = _taylor(numerators[i], pole, mult - 1)
            scale = _evaluation_scale(numerators[i], pole)
            order = 0
            while order < mult and scale > 0 and abs(series[order]) <= clustering_eps * scale:
                order += 1
            if order and scale > 0:
                series[:order] = 0.0
                cancellations.append(PoleCancellation(channel=i, pole=complex(pole), order=order))
            g = np.convolve(series, inverse)[:mult]
            residues[i, j] = g[mult - 1]
            for k in range(mult):
                time_coefficients[i, j, k] = g[mult - 1 - k] / math.factorial(k)

    unstable = tuple(complex(p) for p in poles if p.real > UNSTABLE_TOL)
    for pole in unstable:
        logger.warning(
            f"Растущий полюс p={pole.real:.6g}{pole.imag:+.6g}i: вариант {params.variant.value} "
            f"не сохраняет норму"
        )
    if cancellations:
        logger.info(f"Сокращено {len(cancellations)} пар полюс/нуль числителя")

    return RationalSolution(
        poles=poles,
        multiplicities=multiplicities,
        residues=residues,
        time_coefficients=time_coefficients,
        denominator=denominator,
        numerators=numerators,
        frame=system.frame,
        unstable_poles=unstable,
        cancellations=tuple(cancellations),
    )


def analytic_residue_solution(
    c1_0: Union[complex, np.ndarray],
    params: KernelParams,
    t: np.ndarray,
    c0: Union[complex, None] = None,
    clustering_eps: float = 1e-8,
) -> Trajectory:
    """
    c_i(t) = Σ_poles Res[e^{pt}c_i(p)] на сетке t

    Args:
        c1_0: Амплитуда c_1(0) (остальные нули) или полный вектор c(0)
        params: Параметры ядра
        t: Временная сетка
        c0: Амплитуда основного состояния; по умолчанию sqrt(1 − Σ|c_n(0)|²)
        clustering_eps: Порог слияния корней

    Returns:
        Траектория без амплитуд бани
    """
    if np.ndim(c1_0) == 0:
        c_init = np.zeros(params.N, dtype=complex)
        c_init[0] = complex(c1_0)
    else:
        c_init = np.asarray(c1_0, dtype=complex)
    if c0 is None:
        c0 = np.sqrt(max(0.0, 1.0 - float(np.sum(np.abs(c_init) ** 2))))
    solution = residue_expansion(c_init, params, clustering_eps)
    t = np.asarray(t, dtype=float)
    return Trajectory(t=t, c0=c0, c=solution.evaluate(t), f=None, frame=solution.frame)


def printed_residue_coefficients(
    p: complex, params: KernelParams, c1_0: complex
) -> Tuple[complex, complex, complex]:
    """
    Выражения α, β, δ в напечатанном виде для N=3

    α = c₁(ABC p² − a² − A), β = c₁a(aB − BCp), δ = c₁a(aC − BCp),
    A, B, C = p + λ + i(ω_m + ω_c), a = γ₀λ/2.
    """
    if params.N != 3:
        raise ParameterError("Напечатанные коэффициенты определены только для N=3")
    A, B, C = p + params.lam + 1j * (params.omega_m + params.omega_c)
    a = params.amplitude
    alpha = c1_0 * (A * B * C * p**2 - a**2 - A)
    beta = c1_0 * a * (a * B - B * C * p)
    delta = c1_0 * a * (a * C - B * C * p)
    return complex(alpha), complex(beta), complex(delta)
