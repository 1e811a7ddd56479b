"""Exact bipartite entanglement dynamics of equivalent-neighbor spin-1/2
XY (spin van der Waals / Lipkin-Meshkov-Glick) systems.

Two independent pipelines compute the same observables: a closed-form one
(exact rational mixing coefficients, integer oscillation frequencies) and a
brute-force one (dense sector Hamiltonians diagonalized exactly).  The
:mod:`spinvdw.oracle` module compares them; the CLI exposes both.
"""

from .backend import KERNEL_BACKEND
from .combinatorics import (
    BCoefficientTable,
    b_coefficient,
    b_table,
    binomial,
    schmidt_multiplicities,
)
from .entanglement import (
    CriticalTimes,
    NormalizationError,
    ScanRow,
    SchmidtSpectrum,
    SingularTimeError,
    critical_times_m1,
    entropy,
    entropy_grid,
    entropy_rate_m1,
    entropy_series,
    magic_number_scan,
    max_entropy_at_t2,
    schmidt_spectrum,
)
from .evolution import (
    AmplitudeVector,
    PhaseSpectrum,
    amplitude_series,
    amplitudes_at,
    phase_spectrum,
)
from .model import ModelSpec
from .oracle import (
    BudgetExceededError,
    ReducedDensity,
    SectorBasis,
    SectorHamiltonian,
    SectorState,
    VerificationReport,
    build_sector_hamiltonian,
    full_space_crosscheck,
    initial_sector_state,
    propagate,
    reduced_density,
    schmidt_eigenvalues,
    sector_basis,
    verify_closed_form,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "AmplitudeVector",
    "BCoefficientTable",
    "BudgetExceededError",
    "CriticalTimes",
    "ModelSpec",
    "NormalizationError",
    "PhaseSpectrum",
    "ReducedDensity",
    "ScanRow",
    "SchmidtSpectrum",
    "SectorBasis",
    "SectorHamiltonian",
    "SectorState",
    "SingularTimeError",
    "VerificationReport",
    "amplitude_series",
    "amplitudes_at",
    "b_coefficient",
    "b_table",
    "binomial",
    "build_sector_hamiltonian",
    "critical_times_m1",
    "entropy",
    "entropy_grid",
    "entropy_rate_m1",
    "entropy_series",
    "full_space_crosscheck",
    "initial_sector_state",
    "magic_number_scan",
    "max_entropy_at_t2",
    "phase_spectrum",
    "propagate",
    "reduced_density",
    "schmidt_eigenvalues",
    "schmidt_multiplicities",
    "schmidt_spectrum",
    "sector_basis",
    "verify_closed_form",
    "von_neumann_entropy",
]
