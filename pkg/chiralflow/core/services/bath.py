"""
Лоренцева спектральная плотность и выборка дискретных мод бани
"""

import logging
import math
from typing import Union

import numpy as np

from chiralflow.core.domain.bath import BathModes, BathParams, SamplingScheme
from chiralflow.core.domain.chain import ChainParams, FrequencyConvention
from chiralflow.core.domain.errors import ParameterError
from chiralflow.core.services.model import zero_field_center

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _center(p: BathParams) -> float:
    if p.omega_c is None:
        raise ParameterError("Центр бани omega_c не разрешён, вызовите resolve_center")
    return p.omega_c


def spectral_density(omega: ArrayLike, p: BathParams) -> ArrayLike:
    """J(ω) = γ₀λ² / (2π((ω − ω_c)² + λ²))"""
    x = np.asarray(omega, dtype=float) - _center(p)
    value = p.gamma0 * p.lam**2 / (2.0 * np.pi * (x * x + p.lam**2))
    return float(value) if np.ndim(value) == 0 else value


def window_mass(p: BathParams) -> float:
    """Масса лоренциана внутри окна [ω_c − W, ω_c + W]: (γ₀λ/π)·atan(W/λ)"""
    return p.gamma0 * p.lam / math.pi * math.atan(p.half_window / p.lam)


def resolve_center(
    p: BathParams,
    chain: ChainParams,
    conv: FrequencyConvention = FrequencyConvention.AS_PRINTED,
) -> BathParams:
    """
    Подстановка центра бани по умолчанию

    omega_c = None заменяется средней ω_n того же кольца без магнитного поля,
    так что поле B отстраивает кольцо от магнонов подложки.
    """
    if p.omega_c is not None:
        return p
    center = zero_field_center(chain, conv)
    logger.debug(f"Центр бани разрешён по кольцу без поля: omega_c={center:.6g}")
    return p.with_center(center)


def sample_modes(p: BathParams) -> BathModes:
    """
    Детерминированная выборка k_max мод в окне ω_c ± W

    g_k = sqrt(J(ω_k)·2W/k_max). Генератор PCG64 от зерна из параметров,
    одинаковые параметры дают побитово одинаковые массивы.

    Args:
        p: Параметры бани с разрешённым центром

    Returns:
        BathModes

    Raises:
        ParameterError: Центр не разрешён
    """
    center = _center(p)
    k_max = int(p.k_max)
    W = p.half_window
    cell = 2.0 * W / k_max
    rng = np.random.Generator(np.random.PCG64(int(p.seed)))

    if p.scheme == SamplingScheme.IID_UNIFORM:
        omega_k = center + W * (2.0 * rng.random(k_max) - 1.0)
    else:
        midpoints = center - W + cell * (np.arange(k_max) + 0.5)
        omega_k = midpoints + p.jitter * cell * (rng.random(k_max) - 0.5)

    g_k = np.sqrt(spectral_density(omega_k, p) * cell)
    modes = BathModes(omega_k=omega_k, g_k=g_k)
    logger.debug(
        f"Выбрано {k_max} мод ({p.scheme.value}), Σg²={modes.coupling_mass:.6g}, "
        f"масса окна {window_mass(p):.6g}"
    )
    return modes
