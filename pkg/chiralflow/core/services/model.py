"""
Спектр сектора одного возбуждения хирального кольца
"""

import logging

import numpy as np

from chiralflow.core.domain.chain import ChainParams, FrequencyConvention, SystemSpectrum
from chiralflow.core.domain.errors import ModeIndexError, ParameterError

logger = logging.getLogger(__name__)


def dispersion(params: ChainParams, n: np.ndarray) -> np.ndarray:
    """E_n = J1·cos(2πn/N) + J2·cos(4πn/N) + D·sin(2πn/N) − B(N−1)"""
    residue = np.mod(np.asarray(n, dtype=float), params.N)
    # знаковый вычет в (−N/2, N/2]: моды n и N−n получают фазы ±q
    residue = np.where(residue > params.N / 2, residue - params.N, residue)
    q = 2.0 * np.pi * residue / params.N
    return (
        params.J1 * np.cos(q)
        + params.J2 * np.cos(2.0 * q)
        + params.D * np.sin(q)
        - params.B * (params.N - 1)
    )


def build_spectrum(
    params: ChainParams,
    conv: FrequencyConvention = FrequencyConvention.AS_PRINTED,
) -> SystemSpectrum:
    """
    Построение спектра одного возбуждения

    Args:
        params: Параметры кольца
        conv: Отсчёт собственных частот

    Returns:
        SystemSpectrum с E_g = −B·N, E_n для n=1..N и ω_n

    Raises:
        ParameterError: Недопустимые параметры кольца
    """
    if params.N < 3:
        raise ParameterError(f"Кольцо требует N >= 3, получено N={params.N}")

    conv = FrequencyConvention(conv)
    E_g = -params.B * params.N
    E_n = dispersion(params, np.arange(1, params.N + 1))

    if conv == FrequencyConvention.AS_PRINTED:
        omega_n = (E_n - params.B * params.N) / params.hbar
    else:
        omega_n = (E_n - E_g) / params.hbar

    logger.debug(
        f"Спектр N={params.N}: E_n в [{E_n.min():.4f}, {E_n.max():.4f}], соглашение {conv.value}"
    )
    return SystemSpectrum(E_g=E_g, E_n=E_n, omega_n=omega_n, convention=conv)


def mode_frequencies(
    params: ChainParams,
    conv: FrequencyConvention = FrequencyConvention.AS_PRINTED,
) -> np.ndarray:
    return build_spectrum(params, conv).omega_n


def zero_field_center(
    params: ChainParams,
    conv: FrequencyConvention = FrequencyConvention.AS_PRINTED,
) -> float:
    """Средняя ω_n того же кольца при B=0 (центр бани по умолчанию)"""
    return float(np.mean(mode_frequencies(params.with_field(B=0.0), conv)))


def site_amplitudes(n: int, N: int) -> np.ndarray:
    """
    Амплитуды блоховского состояния |n⟩ на узлах l=1..N: exp(−i·2πnl/N)/√N

    Raises:
        ModeIndexError: n вне 1..N
    """
    if not 1 <= n <= N:
        raise ModeIndexError(f"Номер моды {n} вне диапазона 1..{N}")
    l = np.arange(1, N + 1)
    # nl mod N держит фазу в [0, 2π) и делает n=N точно единичным
    phase = 2.0 * np.pi * ((n * l) % N) / N
    return np.exp(-1j * phase) / np.sqrt(N)


def single_excitation_hamiltonian(params: ChainParams) -> np.ndarray:
    """
    Гамильтониан кольца в узельном базисе сектора одного возбуждения

    Собственные пары: (E_n, site_amplitudes(n)). Прыжки на соседей с амплитудой
    (J1 + iD)/2 вперёд и на вторых соседей J2/2, диагональ −B(N−1).
    """
    N = params.N
    H = np.zeros((N, N), dtype=complex)
    # ⟨l|H|l+1⟩ = (J1 + iD)/2 даёт J1 cos q + D sin q для exp(−iql)
    hop1 = 0.5 * (params.J1 + 1j * params.D)
    hop2 = 0.5 * params.J2
    for l in range(N):
        H[l, (l + 1) % N] += hop1
        H[(l + 1) % N, l] += np.conj(hop1)
        H[l, (l + 2) % N] += hop2
        H[(l + 2) % N, l] += hop2
    H += np.eye(N) * (-params.B * (N - 1))
    return H
