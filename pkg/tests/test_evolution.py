from __future__ import annotations

import math

import numpy as np
import pytest

from spinvdw.combinatorics import b_table, schmidt_multiplicities
from spinvdw.evolution import amplitude_series, amplitudes_at, phase_spectrum
from spinvdw.model import ModelSpec


def weighted_norm(spec, amplitudes) -> float:
    degeneracy = np.array(schmidt_multiplicities(spec), dtype=float)
    return float((degeneracy * np.abs(amplitudes) ** 2).sum())


class TestPhaseSpectrum:
    @pytest.mark.parametrize(
        "n,m,expected",
        [(7, 1, [-6, 1]), (4, 2, [-4, 0, 2]), (2, 0, [0])],
    )
    def test_values(self, n, m, expected):
        assert phase_spectrum(ModelSpec(n, m)).phases.tolist() == expected

    def test_frequency_formula_symmetric_under_reflection(self):
        # n(N+1-n) is unchanged by n -> N+1-n
        for n_tot in range(2, 15):
            for n in range(0, n_tot + 2):
                assert n * (n_tot + 1 - n) == (n_tot + 1 - n) * (n_tot + 1 - (n_tot + 1 - n))


class TestAmplitudesAt:
    def test_initial_product_state(self):
        for n in range(2, 11):
            for m_exc in range(0, n + 1):
                spec = ModelSpec(n, m_exc)
                amps = amplitudes_at(spec, b_table(spec), 0.0).amplitudes
                expected = np.zeros(spec.m_prime + 1)
                expected[0] = 1.0
                assert np.max(np.abs(amps - expected)) < 1e-15

    def test_two_site_half_transfer(self):
        spec = ModelSpec(2, 1)
        amps = amplitudes_at(spec, b_table(spec), math.pi / 4).amplitudes
        # C_1 = (1/2) e^{-i tau} - (1/2) e^{i tau} = -i sin(tau)
        assert abs(abs(amps[1]) ** 2 - 0.5) < 1e-15

    def test_six_site_probability(self):
        spec = ModelSpec(6, 1)
        amps = amplitudes_at(spec, b_table(spec), math.pi / 6).amplitudes
        assert abs(abs(amps[1]) ** 2 - 1.0 / 9.0) < 1e-14

    @pytest.mark.parametrize("n", range(2, 51))
    def test_single_excitation_closed_form(self, n):
        spec = ModelSpec(n, 1)
        table = b_table(spec)
        rng = np.random.default_rng(n)
        for tau in rng.uniform(0.0, 4.0 * math.pi, 5):
            amps = amplitudes_at(spec, table, tau).amplitudes
            expected = 4.0 / n**2 * math.sin(0.5 * n * tau) ** 2
            assert abs(abs(amps[1]) ** 2 - expected) < 1e-12

    def test_normalization_random_times(self):
        rng = np.random.default_rng(7)
        for n in range(2, 11):
            for m_exc in range(0, n + 1):
                spec = ModelSpec(n, m_exc)
                table = b_table(spec)
                for tau in rng.uniform(0.0, 4.0 * math.pi, 100):
                    amps = amplitudes_at(spec, table, tau).amplitudes
                    assert abs(weighted_norm(spec, amps) - 1.0) < 1e-12

    def test_table_spec_mismatch(self):
        with pytest.raises(ValueError):
            amplitudes_at(ModelSpec(5, 2), b_table(ModelSpec(4, 2)), 0.1)

    def test_single_excitation_periodicity(self):
        rng = np.random.default_rng(3)
        for n in range(2, 13):
            spec = ModelSpec(n, 1)
            table = b_table(spec)
            tau = float(rng.uniform(0.0, 2.0 * math.pi))
            before = np.abs(amplitudes_at(spec, table, tau).amplitudes)
            after = np.abs(amplitudes_at(spec, table, tau + 2.0 * math.pi / n).amplitudes)
            assert np.max(np.abs(before - after)) < 1e-12


class TestAmplitudeSeries:
    def test_single_point_grid(self):
        series = amplitude_series(ModelSpec(2, 1), [0.0])
        assert len(series) == 1
        assert np.allclose(series[0].amplitudes, [1.0, 0.0], atol=1e-15)

    def test_matches_single_point_evaluation(self):
        spec = ModelSpec(2, 1)
        series = amplitude_series(spec, [0.0, math.pi / 4])
        direct = amplitudes_at(spec, b_table(spec), math.pi / 4)
        assert np.max(np.abs(series[1].amplitudes - direct.amplitudes)) < 1e-15
        assert series[1].tau == direct.tau

    def test_dense_grid_normalization(self):
        spec = ModelSpec(8, 4)
        grid = np.linspace(0.0, 2.0 * math.pi, 101)
        for vec in amplitude_series(spec, grid):
            assert abs(weighted_norm(spec, vec.amplitudes) - 1.0) < 1e-12

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            amplitude_series(ModelSpec(2, 1), [])
