"""
Тесты лапласовского решения: многочлены, полюсы, вычеты
"""

import numpy as np
import pytest

from chiralflow.core.domain.chain import ChainParams
from chiralflow.core.domain.errors import ParameterError
from chiralflow.core.domain.kernel import KernelParams, KernelVariant
from chiralflow.core.services.kernel import evolve_volterra, laplace_system
from chiralflow.core.services.laplace import (
    analytic_residue_solution,
    build_Dp,
    cramer_numerators,
    dp_numerator,
    find_poles,
    printed_residue_coefficients,
    residue_expansion,
)
from chiralflow.core.services.model import build_spectrum

ALL_VARIANTS = list(KernelVariant)


def _ring3(variant: KernelVariant) -> KernelParams:
    """Кольцо N=3 (ω ≈ ±0.433, 0), ω_c = 0, γ₀ = 1, λ = 0.1"""
    spectrum = build_spectrum(ChainParams(N=3, D=0.5))
    return KernelParams(
        gamma0=1.0,
        lam=0.1,
        omega_c=0.0,
        omega_m=spectrum.omega_n,
        variant=variant,
        omega_g=spectrum.E_g,
    )


def _generic(variant: KernelVariant = KernelVariant.LAPLACE_AS_PRINTED) -> KernelParams:
    return KernelParams(
        gamma0=1.0, lam=0.1, omega_c=0.2, omega_m=[0.3, -0.1, 0.5], variant=variant
    )


def _assert_poles(poles, mults, expected, expected_mults, tol=1e-8):
    assert list(mults) == expected_mults
    for pole, target in zip(poles, expected):
        assert abs(pole - target) <= tol * max(1.0, abs(target))


class TestFindPoles:
    def test_confluent_four_and_two(self):
        """(p − 1)²(p + 2)⁴"""
        coefficients = np.poly([1.0, 1.0, -2.0, -2.0, -2.0, -2.0])
        poles, mults = find_poles(coefficients)
        _assert_poles(poles, mults, [-2.0, 1.0], [4, 2])

    def test_three_double_roots(self):
        roots = [0.5, -1.0 + 1.0j, -1.0 - 1.0j]
        poles, mults = find_poles(np.poly(roots + roots))
        _assert_poles(poles, mults, [-1.0 - 1.0j, -1.0 + 1.0j, 0.5], [2, 2, 2])

    def test_simple_roots_match_numpy(self):
        roots = np.array([-3.0, -1.5, 0.2, 1.0 + 2.0j, 1.0 - 2.0j, 2.5])
        poles, mults = find_poles(np.poly(roots))
        assert list(mults) == [1] * 6
        reference = np.sort_complex(np.roots(np.poly(roots)))
        np.testing.assert_allclose(np.sort_complex(poles), reference, atol=1e-10)

    def test_exact_zero_roots(self):
        """p³(p² + 2p + 3): тройной нуль выделяется точно"""
        poles, mults = find_poles([1.0, 2.0, 3.0, 0.0, 0.0, 0.0])
        assert sum(mults) == 5
        zero = int(np.argmin(np.abs(poles)))
        assert poles[zero] == 0
        assert mults[zero] == 3

    def test_ordering(self):
        poles, _ = find_poles(np.poly([2.0, -1.0 + 0.5j, -1.0 - 0.5j]))
        assert poles[0].real < poles[-1].real
        assert poles[0].imag < poles[1].imag

    def test_zero_leading_coefficient(self):
        with pytest.raises(ParameterError):
            find_poles([0.0, 1.0, 2.0])

    def test_constant_has_no_roots(self):
        poles, mults = find_poles([3.0])
        assert poles.size == 0 and mults.size == 0


class TestDeterminant:
    def test_printed_denominator(self):
        """ABC·p³ − a²(A+B+C)p + 2a³ для варианта laplace_as_printed"""
        params = _generic()
        a = params.amplitude
        coefficients = dp_numerator(params)
        assert coefficients.shape == (7,)
        assert coefficients[0] == pytest.approx(1.0)
        rng = np.random.default_rng(1)
        for p in rng.normal(size=5) + 1j * rng.normal(size=5):
            A, B, C = p + params.lam + 1j * (params.omega_m + params.omega_c)
            expected = A * B * C * p**3 - a**2 * (A + B + C) * p + 2 * a**3
            assert np.polyval(coefficients, p) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_build_Dp_is_matrix_determinant(self, variant):
        """D(p) совпадает с det M(p), M = diag(p + iν) − κ·W·diag(1/(p + z))"""
        params = _generic(variant)
        system = laplace_system(params)
        rng = np.random.default_rng(2)
        for p in rng.normal(size=20) + 1j * rng.normal(size=20):
            M = np.diag(p + 1j * system.nu) - system.kappa * system.coupling / (p + system.z)
            assert build_Dp(p, params) == pytest.approx(np.linalg.det(M), rel=1e-9, abs=1e-12)

    def test_cramer_rule(self):
        """M(p)·c(p) = c(0) для c_i = N_i/Q"""
        params = _generic(KernelVariant.OFF_DIAGONAL_AS_PRINTED)
        system = laplace_system(params)
        c_init = np.array([0.6, 0.0, 0.8j])
        Q = dp_numerator(params)
        numerators = cramer_numerators(params, c_init)
        p = 0.7 - 0.4j
        c = np.array([np.polyval(n, p) for n in numerators]) / np.polyval(Q, p)
        M = np.diag(p + 1j * system.nu) - system.kappa * system.coupling / (p + system.z)
        np.testing.assert_allclose(M @ c, c_init, atol=1e-12)

    def test_size_limit(self):
        params = KernelParams(gamma0=1.0, lam=0.1, omega_c=0.0, omega_m=np.zeros(7))
        with pytest.raises(ParameterError):
            dp_numerator(params)


class TestPrintedCoefficients:
    def test_alpha_differs_from_cramer_numerator(self):
        """N_1 = c₁(ABC·p² − a²A); напечатанное α отличается"""
        params = _generic()
        a = params.amplitude
        numerators = cramer_numerators(params, np.array([1.0, 0.0, 0.0]))
        p = 0.3 + 0.2j
        A, B, C = p + params.lam + 1j * (params.omega_m + params.omega_c)
        alpha, beta, delta = printed_residue_coefficients(p, params, 1.0)

        n1 = np.polyval(numerators[0], p)
        assert n1 == pytest.approx(A * B * C * p**2 - a**2 * A, rel=1e-12)
        assert abs(n1 - alpha) > 1e-3
        assert np.polyval(numerators[1], p) == pytest.approx(beta, rel=1e-12)
        assert np.polyval(numerators[2], p) == pytest.approx(delta, rel=1e-12)

    def test_only_three_spins(self):
        params = KernelParams(gamma0=1.0, lam=0.1, omega_c=0.0, omega_m=np.zeros(4))
        with pytest.raises(ParameterError):
            printed_residue_coefficients(0.1, params, 1.0)


class TestResidueExpansion:
    def test_residues_sum_to_initial_amplitudes(self):
        params = _ring3(KernelVariant.OFF_DIAGONAL_AS_PRINTED)
        c_init = np.array([0.6, 0.0, 0.8j])
        solution = residue_expansion(c_init, params)
        np.testing.assert_allclose(solution.residues.sum(axis=1), c_init, atol=1e-9)
        assert solution.degree == 6

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_matches_volterra(self, variant):
        """Вычеты и интегрирование уравнения с ядром дают одну траекторию"""
        params = _ring3(variant)
        reference = evolve_volterra(np.array([1.0, 0.0, 0.0]), params, 20.0, 201)
        analytic = analytic_residue_solution(1.0, params, reference.t)
        scale = max(1.0, float(np.max(np.abs(reference.c))))
        assert np.max(np.abs(analytic.c - reference.c)) <= 1e-5 * scale
        assert analytic.frame == reference.frame

    def test_initial_value(self):
        params = _ring3(KernelVariant.FULL_SUM_AS_PRINTED)
        trajectory = analytic_residue_solution(1.0, params, np.array([0.0]))
        np.testing.assert_allclose(trajectory.c[0], [1.0, 0.0, 0.0], atol=1e-9)

    def test_vector_initial_state(self):
        params = _ring3(KernelVariant.CONTINUUM_LIMIT)
        c_init = np.array([0.6, 0.8, 0.0])
        trajectory = analytic_residue_solution(c_init, params, np.array([0.0, 1.0]))
        np.testing.assert_allclose(trajectory.c[0], c_init, atol=1e-9)
        assert trajectory.c0 == pytest.approx(0.0, abs=1e-7)

    def test_full_sum_cancels_zero_pole(self):
        """Ранг-один связь при ν = 0: двойной нуль Q в p = 0 сокращается с числителем"""
        params = _ring3(KernelVariant.FULL_SUM_AS_PRINTED)
        solution = residue_expansion(np.array([1.0, 0.0, 0.0]), params)
        assert any(abs(c.pole) < 1e-6 for c in solution.cancellations)

    def test_continuum_limit_cancels_bath_pole(self):
        params = _ring3(KernelVariant.CONTINUUM_LIMIT)
        solution = residue_expansion(np.array([1.0, 0.0, 0.0]), params)
        z = params.lam + 1j * params.omega_c
        assert any(abs(c.pole + z) < 1e-6 for c in solution.cancellations)
        assert not solution.unstable_poles

    def test_off_diagonal_reports_growing_poles(self):
        params = _ring3(KernelVariant.OFF_DIAGONAL_AS_PRINTED)
        solution = residue_expansion(np.array([1.0, 0.0, 0.0]), params)
        assert solution.unstable_poles
        assert all(p.real > 0 for p in solution.unstable_poles)
