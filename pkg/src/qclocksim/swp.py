"""Finite-dimensional pointer clocks and their degradation under dilation.

A pointer clock with N levels and level spacing omega0 carries a conjugate
basis of pointer states w_k (discrete Fourier transform of the energy basis).
Started in w_0, free evolution marches the state through w_1, w_2, ... at
intervals of the resolution time tau = 2 pi / (N omega0), so the pointer
index k is a clock hand.

Time dilation multiplies the level-n frequency by a factor d_n.  A uniform
factor (classical dilation, d_n identical for every n) only reparametrizes
the hand: the pointer variance at laboratory time t equals the undilated
variance at d t, and the hand still sharpens fully once per rescaled tick.
A level-dependent factor (nonclassical dilation, d_n varying with n because
internal energy gravitates) destroys the rephasing: the pointer variance at
the would-be ticks is strictly positive and the effective tick spacing
drifts away from tau.

Pointer probabilities are read with the inverse FFT, so clocks up to a few
thousand levels stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import InternalSpectrum

# Relative bracket width at which tick refinement stops, in units of tau.
TICK_REFINE_TOL = 1e-9


@dataclass(frozen=True)
class SWPClock:
    """An N-level pointer clock with uniform level spacing omega0."""

    dim: int
    omega0: float

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError("a pointer clock needs at least two levels")
        if not self.omega0 > 0.0:
            raise ValueError("level spacing omega0 must be positive")

    @property
    def tau(self) -> float:
        """Resolution time: the hand advances one pointer state per tau."""
        return 2.0 * np.pi / (self.dim * self.omega0)

    def pointer_states(self) -> np.ndarray:
        """Matrix whose row k is the pointer state w_k in the energy basis."""
        n = np.arange(self.dim)
        return np.exp(-2j * np.pi * np.outer(n, n) / self.dim) / np.sqrt(self.dim)

    def time_operator(self) -> np.ndarray:
        """sum_k (k tau) |w_k><w_k|; its spectrum is the tick grid."""
        w = self.pointer_states()
        ticks = self.tau * np.arange(self.dim)
        return w.conj().T @ (ticks[:, None] * w)


@dataclass(frozen=True)
class DilationProfile:
    """Per-level frequency multipliers d_n applied to the clock spectrum."""

    factors: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        factors = np.asarray(self.factors, dtype=float)
        factors.setflags(write=False)
        object.__setattr__(self, "factors", factors)
        if factors.ndim != 1 or factors.size < 2:
            raise ValueError("factors must be a 1-d array over clock levels")
        if np.any(factors <= 0.0) or np.any(factors >= 2.0):
            raise ValueError("dilation factors must lie strictly inside (0, 2)")

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.factors == self.factors[0]))

    @classmethod
    def none(cls, dim: int) -> "DilationProfile":
        return cls(factors=np.ones(dim), kind="none")

    @classmethod
    def velocity_classical(cls, dim: int, v_b: float) -> "DilationProfile":
        """Clock flown at velocity v_b: every level slows by 1 - v_b^2/2."""
        return cls(factors=np.full(dim, 1.0 - 0.5 * v_b * v_b), kind="velocity-classical")

    @classmethod
    def observer_classical(cls, dim: int, v_b: float) -> "DilationProfile":
        """Observer flown instead: every level speeds up by 1 + v_b^2/2."""
        return cls(factors=np.full(dim, 1.0 + 0.5 * v_b * v_b), kind="observer-classical")

    @classmethod
    def momentum_nonclassical(cls, p_b: float, spectrum: InternalSpectrum) -> "DilationProfile":
        """Round trip at momentum p_b: level n slows by 1 - p_b^2/(2 M_n).

        The factor depends on the level through the mass M_n = 1 + eps_n,
        which is what makes the profile nonclassical.
        """
        return cls(
            factors=1.0 - 0.5 * p_b * p_b / spectrum.masses,
            kind="momentum-nonclassical",
        )


def _check_pair(clock: SWPClock, profile: DilationProfile) -> None:
    if profile.factors.size != clock.dim:
        raise ValueError(
            f"profile has {profile.factors.size} factors but the clock has "
            f"{clock.dim} levels"
        )


def clock_state_at(clock: SWPClock, profile: DilationProfile, t: float) -> np.ndarray:
    """Energy-basis amplitudes at time t, starting from pointer state w_0."""
    _check_pair(clock, profile)
    n = np.arange(clock.dim)
    return np.exp(-1j * n * clock.omega0 * profile.factors * t) / np.sqrt(clock.dim)


def pointer_probabilities(clock: SWPClock, amplitudes: np.ndarray) -> np.ndarray:
    """P_k = |<w_k|state>|^2 for every pointer state at once."""
    overlaps = np.sqrt(clock.dim) * np.fft.ifft(amplitudes)
    return np.abs(overlaps) ** 2


@dataclass(frozen=True)
class PointerReading:
    """Moments of the pointer distribution at one instant."""

    mean: float
    variance: float
    circular_variance: float


def read_pointer(clock: SWPClock, profile: DilationProfile, t: float) -> PointerReading:
    probs = pointer_probabilities(clock, clock_state_at(clock, profile, t))
    k = np.arange(clock.dim)
    mean_k = float(probs @ k)
    var_k = float(probs @ (k * k)) - mean_k * mean_k
    circ = 1.0 - abs(np.sum(probs * np.exp(2j * np.pi * k / clock.dim)))
    return PointerReading(
        mean=clock.tau * mean_k,
        variance=clock.tau * clock.tau * var_k,
        circular_variance=float(circ),
    )


@dataclass(frozen=True)
class VarianceSeries:
    """Pointer moments sampled on a grid of laboratory times."""

    times: np.ndarray
    mean: np.ndarray
    variance: np.ndarray
    circular_variance: np.ndarray
    tau: float


def variance_timeseries(
    clock: SWPClock, profile: DilationProfile, times: np.ndarray
) -> VarianceSeries:
    times = np.asarray(times, dtype=float)
    readings = [read_pointer(clock, profile, t) for t in times]
    return VarianceSeries(
        times=times,
        mean=np.asarray([r.mean for r in readings]),
        variance=np.asarray([r.variance for r in readings]),
        circular_variance=np.asarray([r.circular_variance for r in readings]),
        tau=clock.tau,
    )


@dataclass(frozen=True)
class TickScan:
    """Local variance minima found inside a scan window."""

    tick_times: np.ndarray
    tick_variances: np.ndarray
    mean_spacing: float
    spacing_deviation: float  # (mean_spacing - tau) / tau
    diagnostic: str


def _golden_minimize(f, lo: float, hi: float, tol: float):
    """Golden-section descent; returns the final (lo, hi) bracket."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return a, b


def _parabolic_vertex(f, lo: float, hi: float) -> float:
    """One parabolic interpolation through (lo, mid, hi); falls back to mid."""
    mid = 0.5 * (lo + hi)
    f_lo, f_mid, f_hi = f(lo), f(mid), f(hi)
    num = (mid - lo) ** 2 * (f_mid - f_hi) - (mid - hi) ** 2 * (f_mid - f_lo)
    den = (mid - lo) * (f_mid - f_hi) - (mid - hi) * (f_mid - f_lo)
    if den == 0.0:
        return mid
    vertex = mid - 0.5 * num / den
    if not lo <= vertex <= hi:
        return mid
    return vertex


def find_effective_ticks(
    clock: SWPClock,
    profile: DilationProfile,
    window=None,
    resolution=None,
) -> TickScan:
    """Locate the times where the pointer variance dips (the actual ticks).

    Scans the window on a uniform grid, brackets every interior local
    minimum, then refines each with golden-section search followed by one
    parabolic polish.  The window must span at least three resolution times
    and the scan grid must be finer than tau / 50, otherwise minima can slip
    between grid points.
    """
    _check_pair(clock, profile)
    tau = clock.tau
    if window is None:
        window = (0.5 * tau, 3.5 * tau)
    if resolution is None:
        resolution = tau / 64.0
    lo, hi = float(window[0]), float(window[1])
    if not hi - lo >= 3.0 * tau:
        raise ValueError("tick window must span at least 3 resolution times")
    if not 0.0 < resolution <= tau / 50.0:
        raise ValueError("tick scan resolution must be positive and at most tau / 50")

    def variance_at(t: float) -> float:
        return read_pointer(clock, profile, t).variance

    grid = np.arange(lo, hi + 0.5 * resolution, resolution)
    values = np.asarray([variance_at(t) for t in grid])
    ticks = []
    tick_vars = []
    for i in range(1, len(grid) - 1):
        if values[i] < values[i - 1] and values[i] <= values[i + 1]:
            a, b = _golden_minimize(variance_at, grid[i - 1], grid[i + 1], tau * TICK_REFINE_TOL)
            t_min = _parabolic_vertex(variance_at, a, b)
            ticks.append(t_min)
            tick_vars.append(variance_at(t_min))
    tick_times = np.asarray(ticks)
    tick_variances = np.asarray(tick_vars)
    if len(ticks) >= 2:
        mean_spacing = float(np.mean(np.diff(tick_times)))
        deviation = (mean_spacing - tau) / tau
        diagnostic = f"{len(ticks)} ticks located"
    else:
        mean_spacing = float("nan")
        deviation = float("nan")
        diagnostic = (
            f"only {len(ticks)} variance minima inside ({lo:.6g}, {hi:.6g}); "
            "spacing undefined, widen the window or check the profile"
        )
    return TickScan(
        tick_times=tick_times,
        tick_variances=tick_variances,
        mean_spacing=mean_spacing,
        spacing_deviation=deviation,
        diagnostic=diagnostic,
    )
