"""Internal level structure of a composite particle.

A particle with internal Hamiltonian eigenvalues E_n carries a different
inertial mass on every internal branch: M_n = m + E_n / c^2.  In natural
units (m = c = 1) that is M_n = 1 + epsilon_n.  The ground level defines the
mass scale, so epsilon_0 = 0 always.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import DEFAULT_GUARD, RegimeGuard


@dataclass(frozen=True)
class InternalSpectrum:
    """Sorted internal energies (as fractions of the rest-mass energy)."""

    epsilons: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.epsilons)

    @property
    def masses(self) -> np.ndarray:
        """Per-branch masses M_n = 1 + epsilon_n (ground-state mass = 1)."""
        return 1.0 + np.asarray(self.epsilons, dtype=float)

    def mass(self, level: int) -> float:
        return 1.0 + self.epsilons[level]

    def __eq__(self, other) -> bool:
        return isinstance(other, InternalSpectrum) and self.epsilons == other.epsilons

    def __hash__(self) -> int:
        return hash(self.epsilons)


def make_spectrum(epsilons, guard: RegimeGuard | None = None) -> InternalSpectrum:
    """Validate a list of dimensionless level energies into a spectrum.

    Levels must start at exactly 0, increase strictly, and stay below the
    guard's eps_max (hard error: the expansion is a precondition, not a
    diagnostic).
    """
    guard = guard or DEFAULT_GUARD
    eps = tuple(float(e) for e in epsilons)
    if not eps:
        raise ValueError("spectrum needs at least one level")
    if eps[0] != 0.0:
        raise ValueError(f"lowest level must sit at 0 (got {eps[0]}); it defines the mass scale")
    for a, b in zip(eps, eps[1:]):
        if not b > a:
            raise ValueError(f"levels must increase strictly (got {a} then {b})")
    guard.check_epsilons(eps)
    return InternalSpectrum(eps)


def ladder_spectrum(dim: int, spacing: float, guard: RegimeGuard | None = None) -> InternalSpectrum:
    """Equally spaced levels epsilon_n = n * spacing, n = 0 .. dim-1."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if spacing <= 0.0 and dim > 1:
        raise ValueError("spacing must be positive")
    return make_spectrum([n * spacing for n in range(dim)], guard=guard)
