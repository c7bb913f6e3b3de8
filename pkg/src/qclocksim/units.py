"""Unit conventions and validity-regime policing.

Everything in this package is computed in natural units: hbar = c = 1 and the
ground-branch rest mass m = 1.  All user-facing numbers are therefore
dimensionless ratios

    epsilon_n = E_n / (m c^2)     internal level energy
    beta      = v / c             boost velocity
    pi        = p / (m c)         momentum
    theta     = t m c^2 / hbar    evolution time

The model expands kinetic terms to first order in p^2/(m M c^2), so it is only
trustworthy while internal energies and momenta stay small.  RegimeGuard
enforces that: epsilon bounds are hard errors (they are preconditions of the
spectrum), momentum bounds warn by default and raise in strict mode.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import RegimeError, RegimeWarning

# CODATA SI constants, used only to convert user input into ratios.
SPEED_OF_LIGHT = 299_792_458.0  # m / s
HBAR = 1.054_571_817e-34  # J s
PLANCK = 2.0 * math.pi * HBAR  # J s

# Phase arithmetic is done in doubles; beyond ~1e6 rad the sub-radian part of
# a phase carries fewer than 10 significant digits and mod-2pi comparisons
# stop being meaningful.
MAX_TOTAL_PHASE = 1.0e6


@dataclass(frozen=True)
class RegimeGuard:
    """Validity bounds for the low-energy expansion.

    eps_max bounds internal energies (epsilon_n < eps_max), kappa_max bounds
    squared momenta including boost kicks (|pi + (1+eps) beta|^2 < kappa_max).
    Both defaults are engineering choices, not physics constants.
    """

    eps_max: float = 0.2
    kappa_max: float = 0.1
    strict: bool = False

    def check_epsilons(self, epsilons) -> None:
        worst = max(epsilons)
        if worst >= self.eps_max:
            raise RegimeError(
                f"internal energy ratio {worst} >= eps_max = {self.eps_max}; "
                "the first-order mass-energy expansion is not valid there"
            )

    def check_momenta(self, momenta, context: str = "state") -> bool:
        """Warn (or raise when strict) if any momentum leaves the regime.

        Returns True when everything is in regime.
        """
        worst = 0.0
        for p in momenta:
            worst = max(worst, float(p) * float(p))
        if worst < self.kappa_max:
            return True
        msg = (
            f"{context}: squared momentum ratio {worst:.6g} >= kappa_max = "
            f"{self.kappa_max}; results are outside the model's validity regime"
        )
        if self.strict:
            raise RegimeError(msg)
        warnings.warn(msg, RegimeWarning, stacklevel=3)
        return False


DEFAULT_GUARD = RegimeGuard()


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless scenario parameters plus the guard that polices them.

    This is the bundle the CLI assembles from a config file; library code
    takes the individual ratios directly.
    """

    epsilons: tuple[float, ...] = (0.0,)
    beta: float = 0.0
    momentum: float = 0.0
    theta: float = 0.0
    guard: RegimeGuard = DEFAULT_GUARD

    def validate(self) -> None:
        self.guard.check_epsilons(self.epsilons)
        kick = max(1.0 + e for e in self.epsilons) * self.beta
        self.guard.check_momenta([self.momentum + kick], context="ModelParams")


def epsilon_from_energy(energy_joule: float, mass_kg: float) -> float:
    """Internal energy in joules -> epsilon = E / (m c^2)."""
    return energy_joule / (mass_kg * SPEED_OF_LIGHT**2)


def epsilon_from_frequency(freq_hz: float, mass_kg: float) -> float:
    """Transition frequency in Hz -> epsilon = h f / (m c^2)."""
    return PLANCK * freq_hz / (mass_kg * SPEED_OF_LIGHT**2)


def beta_from_velocity(velocity_mps: float) -> float:
    return velocity_mps / SPEED_OF_LIGHT


def momentum_ratio(momentum_si: float, mass_kg: float) -> float:
    """Momentum in kg m/s -> pi = p / (m c)."""
    return momentum_si / (mass_kg * SPEED_OF_LIGHT)


def theta_from_time(time_s: float, mass_kg: float) -> float:
    """Time in seconds -> theta = t m c^2 / hbar."""
    return time_s * mass_kg * SPEED_OF_LIGHT**2 / HBAR
