"""Exact operators on plane-wave states of a composite particle.

The free Hamiltonian of a particle whose internal energy contributes to its
inertia is, per internal branch n (natural units, M_n = 1 + epsilon_n):

    E(n, p) = p^2 / (2 M_n) + epsilon_n
            = p^2 / 2 + epsilon_n (1 - p^2 / (2 M_n))

The second form is how we evaluate it: the branch-independent p^2/2 is split
from the small mass-energy correction, so the inter-branch phase differences
that carry the time-dilation signal are not lost to rounding in the large
common term.

Every operator here maps one component to one component:

    momentum boost   |n, p> -> |n, p + p_b>              (no internal coupling)
    velocity boost   |n, p> -> |n, p + M_n v_b>          (internal-state kick)
    translation      |n, p> -> e^{-i p s}   |n, p>
    free evolution   |n, p> -> e^{-i t E(n,p)} |n, p>

Operators are described by small frozen dataclasses so sequences can be built,
inspected and replayed as data.  All phases are available as plain floats
(``phase_increment``), which lets sequence runners accumulate unwrapped phase
without ever touching mod-2pi arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .spectrum import InternalSpectrum
from .states import PlaneWaveState
from .units import DEFAULT_GUARD, RegimeGuard


@dataclass(frozen=True)
class MomentumBoost:
    """e^{i p_b x}: shifts every component's momentum by the same p_b."""

    magnitude: float


@dataclass(frozen=True)
class VelocityBoost:
    """e^{i M v_b x}: shifts branch n by M_n v_b (mass operator in the kick)."""

    magnitude: float


@dataclass(frozen=True)
class Translation:
    """e^{-i p s}: pure momentum-dependent phase, shift by s in position."""

    shift: float


@dataclass(frozen=True)
class BranchTranslation:
    """Translation by a branch-dependent distance shift / M_n.

    This is the (experimental) internal-state-dependent return translation:
    it moves each branch by its own classical drift distance.
    """

    shift: float


@dataclass(frozen=True)
class FreeEvolution:
    """e^{-i t E(n, p)} with the mass-corrected kinetic term."""

    duration: float


OperatorSpec = MomentumBoost | VelocityBoost | Translation | BranchTranslation | FreeEvolution


def kinetic_energy(spectrum: InternalSpectrum, level: int, p: float) -> float:
    """p^2 / (2 M_n), evaluated as p^2/2 minus the mass-energy correction."""
    half_psq = 0.5 * p * p
    eps = spectrum.epsilons[level]
    if eps == 0.0:
        return half_psq
    return half_psq - eps * (half_psq / (1.0 + eps))


def kinetic_energy_naive(spectrum: InternalSpectrum, level: int, p: float) -> float:
    """Direct p^2 / (2 M_n); kept as a cross-check of the refactored form."""
    return 0.5 * p * p / (1.0 + spectrum.epsilons[level])


def total_energy(spectrum: InternalSpectrum, level: int, p: float) -> float:
    """Kinetic plus internal energy, with the dilation factor kept grouped.

    E = p^2/2 + epsilon_n (1 - p^2 / (2 M_n)): the internal term is the level
    energy times its motional dilation factor.
    """
    half_psq = 0.5 * p * p
    eps = spectrum.epsilons[level]
    if eps == 0.0:
        return half_psq
    return half_psq + eps * (1.0 - half_psq / (1.0 + eps))


def momentum_after(op: OperatorSpec, spectrum: InternalSpectrum, level: int, p: float) -> float:
    """Momentum label of |level, p> after applying op."""
    if isinstance(op, MomentumBoost):
        return p + op.magnitude
    if isinstance(op, VelocityBoost):
        return p + (1.0 + spectrum.epsilons[level]) * op.magnitude
    return p


def phase_increment(op: OperatorSpec, spectrum: InternalSpectrum, level: int, p: float) -> float:
    """Real phase added to |level, p> by op (amplitude gains e^{i phase})."""
    if isinstance(op, Translation):
        return -p * op.shift
    if isinstance(op, BranchTranslation):
        return -p * (op.shift / (1.0 + spectrum.epsilons[level]))
    if isinstance(op, FreeEvolution):
        return -op.duration * total_energy(spectrum, level, p)
    return 0.0


def apply_operator(
    state: PlaneWaveState,
    op: OperatorSpec,
    guard: RegimeGuard | None = None,
) -> PlaneWaveState:
    """Apply one operator, returning a new state (input never mutated)."""
    guard = guard or DEFAULT_GUARD
    spectrum = state.spectrum
    momenta = np.array(
        [momentum_after(op, spectrum, int(n), float(p)) for n, p in zip(state.levels, state.momenta)]
    )
    phases = np.array(
        [phase_increment(op, spectrum, int(n), float(p)) for n, p in zip(state.levels, state.momenta)]
    )
    if isinstance(op, (MomentumBoost, VelocityBoost)):
        guard.check_momenta(momenta, context=type(op).__name__)
    return state.with_amplitudes(state.amplitudes * np.exp(1j * phases), momenta=momenta)


def apply_chain(state: PlaneWaveState, ops, guard: RegimeGuard | None = None) -> PlaneWaveState:
    for op in ops:
        state = apply_operator(state, op, guard=guard)
    return state


def trace_chain(
    state: PlaneWaveState, ops, guard: RegimeGuard | None = None
) -> tuple[PlaneWaveState, np.ndarray]:
    """Apply a chain and also return per-component unwrapped phase totals.

    The phase array is accumulated from the same ``phase_increment`` values
    the operators apply, as plain real numbers, so it is free of mod-2pi
    ambiguity and can be differenced across components safely.
    """
    phases = np.zeros(len(state.levels))
    for op in ops:
        for i, (n, p) in enumerate(zip(state.levels, state.momenta)):
            phases[i] += phase_increment(op, state.spectrum, int(n), float(p))
        state = apply_operator(state, op, guard=guard)
    return state, phases


def apply_momentum_boost(state: PlaneWaveState, p_b: float, guard: RegimeGuard | None = None) -> PlaneWaveState:
    return apply_operator(state, MomentumBoost(p_b), guard=guard)


def apply_velocity_boost(state: PlaneWaveState, v_b: float, guard: RegimeGuard | None = None) -> PlaneWaveState:
    return apply_operator(state, VelocityBoost(v_b), guard=guard)


def apply_translation(state: PlaneWaveState, shift: float) -> PlaneWaveState:
    return apply_operator(state, Translation(shift))


def apply_free_evolution(state: PlaneWaveState, duration: float) -> PlaneWaveState:
    return apply_operator(state, FreeEvolution(duration))


def conjugate_velocity_boost_by_translation(
    state: PlaneWaveState,
    v_b: float,
    shift: float,
    tol: float = 1e-12,
    guard: RegimeGuard | None = None,
) -> PlaneWaveState:
    """T(-s) B_v(v_b) T(s) applied to state, verified against its closed form.

    Conjugating a velocity boost by a translation leaves the boost intact and
    multiplies each branch by e^{i M_n v_b s}.  Both paths are computed; if
    any component's phase disagrees beyond tol a ConsistencyError is raised.
    """
    conjugated = apply_chain(
        state, [Translation(shift), VelocityBoost(v_b), Translation(-shift)], guard=guard
    )
    boosted = apply_velocity_boost(state, v_b, guard=guard)
    masses = 1.0 + np.asarray([state.spectrum.epsilons[int(n)] for n in state.levels])
    predicted = boosted.amplitudes * np.exp(1j * masses * v_b * shift)
    worst = float(np.max(np.abs(conjugated.amplitudes - predicted)))
    if worst > tol:
        raise ConsistencyError(
            f"translation-conjugated boost deviates from closed form by {worst:.3e} (tol {tol:.1e})"
        )
    return conjugated
