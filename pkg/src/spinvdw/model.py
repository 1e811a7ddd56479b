"""System configuration for the equivalent-neighbor spin-1/2 XY model."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ModelSpec:
    """``n_total`` spin-1/2 sites with all-to-all XY exchange, ``m_excited``
    of them initially excited.

    The initially excited sites form subsystem A, the remaining
    ``n_total - m_excited`` sites subsystem B.  ``coupling`` is the exchange
    strength in inverse time units; every time argument in this package is
    the dimensionless ``tau = coupling * t``.
    """

    n_total: int
    m_excited: int
    coupling: float = 1.0

    def __post_init__(self) -> None:
        if self.n_total < 2:
            raise ValueError(f"n_total must be >= 2, got {self.n_total}")
        if not 0 <= self.m_excited <= self.n_total:
            raise ValueError(
                f"m_excited must lie in 0..{self.n_total}, got {self.m_excited}"
            )
        if not self.coupling > 0:
            raise ValueError(f"coupling must be positive, got {self.coupling}")

    @property
    def m_prime(self) -> int:
        """Schmidt-rank bound of the bipartition: min(M, N - M)."""
        return min(self.m_excited, self.n_total - self.m_excited)

    def tau_from_time(self, t: float) -> float:
        """Convert a physical time to the dimensionless evolution parameter."""
        return self.coupling * t
