"""Closed-form time evolution of the symmetric-sector amplitudes.

The state stays in an (M'+1)-dimensional subspace spanned by products of
fully symmetric A- and B-excitation states; each amplitude is a finite sum
of integer-frequency oscillations weighted by the exact mixing table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import BCoefficientTable, b_table
from .model import ModelSpec


@dataclass(frozen=True, eq=False)
class PhaseSpectrum:
    """Integer oscillation frequencies, entry n = n(N+1-n) - M(N-M)."""

    spec: ModelSpec
    phases: np.ndarray


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Closed-form amplitudes at one dimensionless time."""

    spec: ModelSpec
    tau: float
    amplitudes: np.ndarray


def phase_spectrum(spec: ModelSpec) -> PhaseSpectrum:
    """Frequencies multiplying tau in each oscillation mode, n = 0..M'."""
    n_tot, m_exc = spec.n_total, spec.m_excited
    phases = np.array(
        [n * (n_tot + 1 - n) - m_exc * (n_tot - m_exc) for n in range(spec.m_prime + 1)],
        dtype=np.int64,
    )
    return PhaseSpectrum(spec, phases)


def amplitudes_at(spec: ModelSpec, table: BCoefficientTable, tau: float) -> AmplitudeVector:
    """Amplitudes C_m(tau) = sum_n b[m][n] exp(i phases[n] tau)."""
    if table.spec != spec:
        raise ValueError(
            f"coefficient table was built for {table.spec}, not {spec}"
        )
    angles = phase_spectrum(spec).phases * float(tau)
    oscillation = np.cos(angles) + 1j * np.sin(angles)
    return AmplitudeVector(spec, float(tau), table.as_array() @ oscillation)


def amplitude_series(spec: ModelSpec, tau_grid) -> list[AmplitudeVector]:
    """Amplitudes along a time grid, order preserved."""
    taus = np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValueError("tau grid must be a non-empty 1-d array")
    table = b_table(spec)
    coeffs = table.as_array()
    angles = np.multiply.outer(taus, phase_spectrum(spec).phases.astype(float))
    amps = (np.cos(angles) + 1j * np.sin(angles)) @ coeffs.T
    return [
        AmplitudeVector(spec, float(tau), row) for tau, row in zip(taus, amps)
    ]
