"""
Тесты спектра сектора одного возбуждения
"""

import numpy as np
import pytest

from chiralflow.core.domain.chain import ChainParams, FrequencyConvention
from chiralflow.core.domain.errors import ModeIndexError
from chiralflow.core.services.model import (
    build_spectrum,
    dispersion,
    mode_frequencies,
    single_excitation_hamiltonian,
    site_amplitudes,
    zero_field_center,
)


class TestDispersion:
    def test_quarter_ring_energy(self):
        """N=4, D=0.5: E_1 = −0.5, E_N = J1 + J2 = 0"""
        spectrum = build_spectrum(ChainParams(N=4, D=0.5))
        assert spectrum.E_n[0] == pytest.approx(-0.5, abs=1e-15)
        assert spectrum.E_n[-1] == pytest.approx(0.0, abs=1e-15)

    def test_matches_extended_precision(self):
        """Сравнение с почленным расчётом в long double для N=50"""
        params = ChainParams(N=50, J1=-1.0, J2=1.0, D=0.5, B=0.25)
        n = np.arange(1, 51, dtype=np.longdouble)
        q = 2 * np.pi * n / np.longdouble(50)
        expected = (
            np.longdouble(-1.0) * np.cos(q)
            + np.cos(2 * q)
            + np.longdouble(0.5) * np.sin(q)
            - np.longdouble(0.25) * 49
        )
        E_n = build_spectrum(params).E_n
        np.testing.assert_allclose(E_n, expected.astype(float), rtol=0.0, atol=1e-13)

    @pytest.mark.parametrize("N", [3, 4, 10, 50])
    def test_zero_dm_symmetry(self, N):
        """При D=0 спектр симметричен: E_n = E_{N−n}"""
        E_n = build_spectrum(ChainParams(N=N, D=0.0)).E_n
        for n in range(1, N):
            assert E_n[n - 1] == E_n[N - n - 1]

    @pytest.mark.parametrize("N", [3, 4, 7, 10, 50])
    def test_dm_sign_flip(self, N):
        """E_n(D) = E_{N−n}(−D) для 1 ≤ n ≤ N−1"""
        E_plus = build_spectrum(ChainParams(N=N, J1=-1.0, J2=0.7, D=0.8, B=0.3)).E_n
        E_minus = build_spectrum(ChainParams(N=N, J1=-1.0, J2=0.7, D=-0.8, B=0.3)).E_n
        for n in range(1, N):
            assert abs(E_plus[n - 1] - E_minus[N - n - 1]) <= 1e-12

    @pytest.mark.parametrize("N", [3, 10, 50])
    def test_field_is_constant_shift(self, N):
        """B входит в E_n только слагаемым −B(N−1)"""
        n = np.arange(1, N + 1)
        base = dispersion(ChainParams(N=N, D=0.5), n)
        for B in (0.1, 0.25, 1.0, 3.0):
            shifted = dispersion(ChainParams(N=N, D=0.5, B=B), n)
            np.testing.assert_allclose(shifted - base, -B * (N - 1), rtol=0.0, atol=1e-12)

    def test_dm_breaks_symmetry(self):
        E_n = build_spectrum(ChainParams(N=4, D=0.5)).E_n
        assert abs(E_n[0] - E_n[2]) == pytest.approx(1.0)

    def test_dispersion_accepts_arrays(self):
        params = ChainParams(N=6)
        np.testing.assert_allclose(dispersion(params, np.array([6])), [0.0], atol=1e-15)


class TestFrequencyConventions:
    def test_as_printed(self):
        params = ChainParams(N=4, D=0.5, B=0.25)
        spectrum = build_spectrum(params, FrequencyConvention.AS_PRINTED)
        np.testing.assert_allclose(spectrum.omega_n, spectrum.E_n - 1.0, atol=1e-15)
        assert spectrum.E_g == -1.0

    def test_ground_referenced(self):
        params = ChainParams(N=4, D=0.5, B=0.25)
        spectrum = build_spectrum(params, "ground_referenced")
        np.testing.assert_allclose(spectrum.omega_n, spectrum.E_n + 1.0, atol=1e-15)
        assert spectrum.convention == FrequencyConvention.GROUND_REFERENCED

    def test_field_shifts_frequencies(self):
        """ω_n сдвигается на −B(2N−1) в соглашении as_printed"""
        base = mode_frequencies(ChainParams(N=5, D=0.5))
        shifted = mode_frequencies(ChainParams(N=5, D=0.5, B=0.5))
        np.testing.assert_allclose(shifted - base, np.full(5, -4.5), atol=1e-14)

    def test_zero_field_center(self):
        """Среднее ω_n по полному периоду без поля равно нулю"""
        params = ChainParams(N=7, D=0.5, B=1.0)
        assert zero_field_center(params) == pytest.approx(0.0, abs=1e-14)


class TestSiteAmplitudes:
    def test_uniform_mode(self):
        np.testing.assert_array_equal(site_amplitudes(5, 5), np.full(5, 1.0 / np.sqrt(5)))

    def test_first_mode_of_four(self):
        expected = np.array([-1j, -1.0, 1j, 1.0]) / 2.0
        np.testing.assert_allclose(site_amplitudes(1, 4), expected, atol=1e-15)

    @pytest.mark.parametrize("n", [1, 3, 7])
    def test_normalized(self, n):
        assert np.linalg.norm(site_amplitudes(n, 7)) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("N", [3, 4, 17, 50])
    def test_bloch_basis_is_orthonormal(self, N):
        """Матрица Грама блоховских состояний равна единичной"""
        V = np.column_stack([site_amplitudes(n, N) for n in range(1, N + 1)])
        np.testing.assert_allclose(V.conj().T @ V, np.eye(N), rtol=0.0, atol=1e-12)

    @pytest.mark.parametrize("n", [0, 5])
    def test_out_of_range(self, n):
        with pytest.raises(ModeIndexError):
            site_amplitudes(n, 4)


class TestHamiltonian:
    def test_bloch_states_are_eigenvectors(self):
        """H·|n⟩ = E_n|n⟩ в узельном базисе"""
        params = ChainParams(N=7, J1=-1.0, J2=0.7, D=0.4, B=0.1)
        H = single_excitation_hamiltonian(params)
        E_n = build_spectrum(params).E_n
        np.testing.assert_allclose(H, H.conj().T, atol=1e-15)
        for n in range(1, 8):
            v = site_amplitudes(n, 7)
            np.testing.assert_allclose(H @ v, E_n[n - 1] * v, atol=1e-13)

    def test_eigenvalues_match_dispersion(self):
        params = ChainParams(N=10, D=0.5)
        eigenvalues = np.linalg.eigvalsh(single_excitation_hamiltonian(params))
        np.testing.assert_allclose(eigenvalues, np.sort(build_spectrum(params).E_n), atol=1e-13)
