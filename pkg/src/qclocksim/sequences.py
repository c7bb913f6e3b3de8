"""Out-and-back boost sequences and their closed-form time-dilation factors.

Each sequence boosts a composite particle away, lets it evolve freely, brings
it back, and evolves again for the same duration.  Because boosts, internal
evolution and translations all act diagonally on (level, momentum) components,
the whole round trip collapses to a per-component phase

    Phi(n, p) = -2 t K(n, p) + G - 2 t epsilon_n d_n

with K the mass-corrected kinetic energy (unchanged motional evolution), G a
level-independent global phase, and d_n the internal dilation factor.  The
three sequence kinds differ only in G and d_n:

    momentum kick p_b    d_n = 1 - p_b^2 / (2 M_n)    G = + t p_b^2
    velocity kick v_b    d_n = 1 - v_b^2 / 2          G = + t v_b^2
    observer moves v_b   d_n = 1 + v_b^2 / 2          G = - t v_b^2

A kick of fixed momentum dilates each internal branch differently (the factor
depends on the branch mass M_n): that is the nonclassical fingerprint.  A
kick of fixed velocity dilates all branches equally, reproducing classical
time dilation.  When the observer moves instead of the clock, the internal
state runs fast rather than slow and the global phase flips sign.

``run_sequence`` executes the operator chain step by step and extracts
G and d_n from the accumulated phases; the closed forms above are evaluated
independently and used as the oracle the run must reproduce.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import IdentityViolationError, SequencingError
from .operators import (
    BranchTranslation,
    FreeEvolution,
    MomentumBoost,
    OperatorSpec,
    Translation,
    VelocityBoost,
    apply_velocity_boost,
    kinetic_energy,
    trace_chain,
)
from .spectrum import InternalSpectrum
from .states import (
    PlaneWaveState,
    inner_product,
    internal_superposition,
    reduced_internal_entropy,
)
from .units import MAX_TOTAL_PHASE, RegimeGuard


class SequenceKind(enum.Enum):
    MOMENTUM = "momentum"
    VELOCITY_CLOCK = "velocity-clock"
    VELOCITY_OBSERVER = "velocity-observer"


def default_probe(
    spectrum: InternalSpectrum,
    momenta=(0.0, 0.1),
    levels=None,
) -> PlaneWaveState:
    """Equal-amplitude probe over two levels and two momenta (where available)."""
    if levels is None:
        levels = (0, 1) if spectrum.dim >= 2 else (0,)
    return PlaneWaveState.from_components(
        spectrum, [(n, p, 1.0) for n in levels for p in momenta]
    )


def build_sequence(
    kind: SequenceKind,
    boost: float,
    duration: float,
    translation_level: int | None = None,
    spectrum: InternalSpectrum | None = None,
    state_dependent_translation: bool = False,
) -> list[OperatorSpec]:
    """Operator chain for one round trip, in application order."""
    t = duration
    if kind is SequenceKind.MOMENTUM:
        drift = boost * t
        if state_dependent_translation:
            out_move: OperatorSpec = BranchTranslation(-drift)
            back_move: OperatorSpec = BranchTranslation(drift)
        else:
            if translation_level is not None:
                if spectrum is None:
                    raise ValueError("translation_level needs the spectrum")
                drift = boost * t / spectrum.mass(translation_level)
            out_move = Translation(-drift)
            back_move = Translation(drift)
        return [
            MomentumBoost(boost), FreeEvolution(t), out_move,
            MomentumBoost(-2.0 * boost), back_move,
            FreeEvolution(t), MomentumBoost(boost),
        ]
    if translation_level is not None or state_dependent_translation:
        raise ValueError("translation options only apply to the momentum-kick sequence")
    if kind is SequenceKind.VELOCITY_CLOCK:
        drift = boost * t
        return [
            VelocityBoost(boost), FreeEvolution(t), Translation(-drift),
            VelocityBoost(-2.0 * boost), Translation(drift),
            FreeEvolution(t), VelocityBoost(boost),
        ]
    if kind is SequenceKind.VELOCITY_OBSERVER:
        return [
            VelocityBoost(-boost), FreeEvolution(t),
            VelocityBoost(2.0 * boost),
            FreeEvolution(t), VelocityBoost(-boost),
        ]
    raise ValueError(f"unknown sequence kind {kind!r}")


def closed_dilation_factor(
    kind: SequenceKind,
    spectrum: InternalSpectrum,
    boost: float,
    level: int,
    state_dependent_translation: bool = False,
) -> float:
    """Internal dilation factor d_n predicted for one level."""
    if kind is SequenceKind.MOMENTUM:
        correction = boost * boost / (2.0 * spectrum.mass(level))
        return 1.0 + correction if state_dependent_translation else 1.0 - correction
    if kind is SequenceKind.VELOCITY_CLOCK:
        return 1.0 - 0.5 * boost * boost
    return 1.0 + 0.5 * boost * boost


def closed_global_phase(
    kind: SequenceKind,
    spectrum: InternalSpectrum,
    boost: float,
    duration: float,
    translation_level: int | None = None,
) -> float:
    """Level-independent phase term G predicted for the sequence."""
    if kind is SequenceKind.MOMENTUM:
        if translation_level is None:
            return duration * boost * boost
        # Returning along the drift of a chosen branch mass only re-weights G.
        return duration * boost * boost * (2.0 / spectrum.mass(translation_level) - 1.0)
    if kind is SequenceKind.VELOCITY_CLOCK:
        return duration * boost * boost
    return -duration * boost * boost


def closed_form_phase(
    kind: SequenceKind,
    spectrum: InternalSpectrum,
    boost: float,
    duration: float,
    level: int,
    momentum: float,
    translation_level: int | None = None,
    state_dependent_translation: bool = False,
) -> float:
    """Unwrapped phase a |level, momentum> component acquires in the sequence."""
    motional = -2.0 * duration * kinetic_energy(spectrum, level, momentum)
    g = closed_global_phase(kind, spectrum, boost, duration, translation_level)
    d = closed_dilation_factor(kind, spectrum, boost, level, state_dependent_translation)
    return motional + g - 2.0 * duration * spectrum.epsilons[level] * d


def closed_form_rhs(
    kind: SequenceKind,
    spectrum: InternalSpectrum,
    boost: float,
    duration: float,
    level: int,
    momentum: float,
    translation_level: int | None = None,
    state_dependent_translation: bool = False,
) -> complex:
    """Complex phase factor (the product of the three closed-form exponentials)."""
    phi = closed_form_phase(
        kind, spectrum, boost, duration, level, momentum,
        translation_level, state_dependent_translation,
    )
    return complex(np.exp(1j * phi))


@dataclass(frozen=True)
class SequenceResult:
    """Everything extracted from one executed round trip."""

    kind: SequenceKind
    boost: float
    duration: float
    levels: np.ndarray
    momenta: np.ndarray
    phases: np.ndarray
    residuals: np.ndarray
    residual_max: float
    fidelity_deviation: float
    global_phase: float
    global_phase_closed: float
    level_factors: dict[int, float]
    level_factors_closed: dict[int, float]
    pair_factors: dict[tuple[int, int], float]
    gammas: dict[int, float]
    gamma_expectation: float
    momentum_error_max: float
    level_phase_spread_max: float
    final_state: PlaneWaveState = field(repr=False)

    def __post_init__(self):
        for n, d in self.level_factors.items():
            if not 0.0 < d < 2.0:
                raise ValueError(f"extracted dilation factor {d} for level {n} outside (0, 2)")


def run_sequence(
    kind: SequenceKind,
    spectrum: InternalSpectrum,
    boost: float,
    duration: float,
    probe: PlaneWaveState | None = None,
    translation_level: int | None = None,
    state_dependent_translation: bool = False,
    guard: RegimeGuard | None = None,
    identity_tol: float = 1e-12,
) -> SequenceResult:
    """Execute one round-trip sequence and verify it against its closed form.

    The probe must occupy level 0: the ground branch carries no internal
    phase and anchors the global-phase extraction.  Dilation factors are read
    off the unwrapped per-component phases; the closed-form prediction is
    evaluated independently and any component whose phase disagrees beyond
    identity_tol raises IdentityViolationError.
    """
    if duration <= 0.0:
        raise ValueError("duration must be positive")
    if translation_level is not None and state_dependent_translation:
        raise ValueError("choose either a translation level or the state-dependent variant")
    probe = probe if probe is not None else default_probe(spectrum)
    if probe.spectrum != spectrum:
        raise ValueError("probe was built on a different spectrum")
    if 0 not in probe.levels:
        raise ValueError("probe must occupy level 0 to anchor phase extraction")

    ops = build_sequence(
        kind, boost, duration,
        translation_level=translation_level,
        spectrum=spectrum,
        state_dependent_translation=state_dependent_translation,
    )
    final, phases = trace_chain(probe, ops, guard=guard)

    momentum_err = float(np.max(np.abs(final.momenta - probe.momenta)))
    if momentum_err > probe.merge_tol:
        raise SequencingError(
            f"sequence did not return momenta (max error {momentum_err:.3e})"
        )
    if float(np.max(np.abs(phases))) > MAX_TOTAL_PHASE:
        raise ValueError("accumulated phase exceeds the mod-2pi safety cap; shorten the run")

    closed = np.array([
        closed_form_phase(
            kind, spectrum, boost, duration, int(n), float(p),
            translation_level, state_dependent_translation,
        )
        for n, p in zip(probe.levels, probe.momenta)
    ])
    residuals = np.abs(np.exp(1j * (phases - closed)) - 1.0)
    residual_max = float(np.max(residuals))
    rhs_state = probe.with_amplitudes(probe.amplitudes * np.exp(1j * closed))
    fid_dev = abs(inner_product(rhs_state, final) - 1.0)
    if residual_max > identity_tol:
        raise IdentityViolationError(
            f"sequence disagrees with closed form: max residual {residual_max:.3e} "
            f"(tol {identity_tol:.1e})"
        )

    # Strip the motional part; what is left must be momentum-independent
    # within each level: G - 2 t epsilon_n d_n.
    internal = phases + 2.0 * duration * np.array(
        [kinetic_energy(spectrum, int(n), float(p)) for n, p in zip(probe.levels, probe.momenta)]
    )
    occupied = sorted(set(int(n) for n in probe.levels))
    level_phase: dict[int, float] = {}
    spread_max = 0.0
    for n in occupied:
        vals = internal[probe.levels == n]
        level_phase[n] = float(np.mean(vals))
        spread_max = max(spread_max, float(np.max(vals) - np.min(vals)))

    g_extracted = level_phase[0]
    factors: dict[int, float] = {}
    for n in occupied:
        eps = spectrum.epsilons[n]
        if eps > 0.0:
            factors[n] = (g_extracted - level_phase[n]) / (2.0 * duration * eps)
    pair_factors: dict[tuple[int, int], float] = {}
    for i, n in enumerate(occupied):
        for m in occupied[i + 1:]:
            gap = spectrum.epsilons[m] - spectrum.epsilons[n]
            if gap != 0.0:
                pair_factors[(n, m)] = (level_phase[n] - level_phase[m]) / (2.0 * duration * gap)

    if kind is SequenceKind.MOMENTUM:
        gammas = {n: float(np.sqrt(1.0 + boost**2 / spectrum.mass(n) ** 2)) for n in occupied}
    else:
        # A velocity kick gives branch n momentum M_n v, i.e. the same speed.
        gammas = {n: float(np.sqrt(1.0 + boost**2)) for n in occupied}
    weights = probe.level_weights()
    gamma_exp = float(sum(weights[n] * gammas[n] for n in occupied))

    return SequenceResult(
        kind=kind,
        boost=boost,
        duration=duration,
        levels=probe.levels.copy(),
        momenta=probe.momenta.copy(),
        phases=phases,
        residuals=residuals,
        residual_max=residual_max,
        fidelity_deviation=fid_dev,
        global_phase=g_extracted,
        global_phase_closed=closed_global_phase(kind, spectrum, boost, duration, translation_level),
        level_factors=factors,
        level_factors_closed={
            n: closed_dilation_factor(kind, spectrum, boost, n, state_dependent_translation)
            for n in factors
        },
        pair_factors=pair_factors,
        gammas=gammas,
        gamma_expectation=gamma_exp,
        momentum_error_max=momentum_err,
        level_phase_spread_max=spread_max,
        final_state=final,
    )


@dataclass(frozen=True)
class PairwiseDilation:
    """Dilation factors of the relative phase between every pair of branches."""

    factors: np.ndarray  # F[n, m] = 1 - p_b^2 / (2 M_n M_m)
    single_branch: np.ndarray  # F[n, n], the bounds of every mixed factor

    def __post_init__(self):
        self.factors.flags.writeable = False
        self.single_branch.flags.writeable = False


def pairwise_dilation(spectrum: InternalSpectrum, boost: float) -> PairwiseDilation:
    """Relative-phase dilation between branch pairs after a momentum kick.

    F[n, m] = 1 - p_b^2 / (2 M_n M_m): the phase between branches n and m
    accumulates slower by exactly this factor.  Mixed factors always lie
    strictly between the two single-branch values F[n, n] and F[m, m]
    (M_n M_m sits strictly between M_n^2 and M_m^2 whenever M_n != M_m).
    """
    masses = spectrum.masses
    factors = 1.0 - boost * boost / (2.0 * np.outer(masses, masses))
    return PairwiseDilation(factors=factors, single_branch=np.diag(factors).copy())


@dataclass(frozen=True)
class FrameEntanglement:
    """Internal-motional entanglement before and after a velocity boost."""

    entropy_before: float
    entropy_after: float
    state_before: PlaneWaveState = field(repr=False)
    state_after: PlaneWaveState = field(repr=False)


def entanglement_frame_demo(
    spectrum: InternalSpectrum,
    momentum: float,
    v_b: float,
    levels=None,
    guard: RegimeGuard | None = None,
) -> FrameEntanglement:
    """Boost a product state and watch entanglement appear with the frame.

    A single plane wave times an internal superposition is a product state
    (entropy 0).  A velocity boost sends each branch to its own momentum
    M_n v_b, so the same state seen from a moving frame is entangled: with
    k equally weighted levels the entropy lands on ln k.
    """
    if spectrum.dim < 2:
        raise ValueError("frame-dependent entanglement needs at least two levels")
    before = internal_superposition(spectrum, momentum, levels=levels)
    after = apply_velocity_boost(before, v_b, guard=guard)
    return FrameEntanglement(
        entropy_before=reduced_internal_entropy(before),
        entropy_after=reduced_internal_entropy(after),
        state_before=before,
        state_after=after,
    )
