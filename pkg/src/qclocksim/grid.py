"""Periodic-grid wavepacket states for operators with position dependence.

Plane-wave components handle everything diagonal, but linear potentials and
accelerated frames need a position representation.  A GridState stores one
complex amplitude array per internal level over D lattice sites (D a power of
two) in a periodic box of length L centered on the origin:

    x_j = (j - D/2) L / D            p_k = 2 pi k / L  (signed FFT order)

The position <-> momentum map is the unitary DFT with the physical origin
phases included, so momentum-domain amplitudes mean what they say:

    psi~(p) = (1/sqrt D) sum_j e^{-i p x_j} psi(x_j)

Natural units as everywhere else: hbar = c = m = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import InternalSpectrum

# Fraction of probability allowed within EDGE_SITES of a lattice boundary
# before the state is flagged as touching the edge.
EDGE_SITES = 4
EDGE_MASS_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class GridState:
    """Per-level amplitudes over a periodic position or momentum lattice."""

    spectrum: InternalSpectrum
    box_length: float
    amplitudes: np.ndarray  # shape (levels, D), unit total norm
    domain: str = "position"  # "position" | "momentum"
    boundary_warning: bool = False

    def __post_init__(self):
        self.amplitudes.flags.writeable = False
        d = self.amplitudes.shape[1]
        if d & (d - 1) or d == 0:
            raise ValueError(f"lattice size {d} must be a power of two")
        if self.amplitudes.shape[0] != self.spectrum.dim:
            raise ValueError("amplitude rows must match the spectrum dimension")
        if self.domain not in ("position", "momentum"):
            raise ValueError(f"unknown domain {self.domain!r}")
        n = float(np.linalg.norm(self.amplitudes))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"grid state norm {n} deviates from 1 beyond 1e-12")

    @property
    def size(self) -> int:
        return self.amplitudes.shape[1]

    @property
    def positions(self) -> np.ndarray:
        d = self.size
        step = self.box_length / d
        return (np.arange(d) - d // 2) * step

    @property
    def momenta(self) -> np.ndarray:
        """Momentum lattice in FFT order, spacing 2 pi / L."""
        d = self.size
        return 2.0 * np.pi * np.fft.fftfreq(d, d=self.box_length / d)

    @property
    def momentum_spacing(self) -> float:
        return 2.0 * np.pi / self.box_length

    def edge_mass(self) -> float:
        """Probability within EDGE_SITES of the current lattice's boundary."""
        if self.domain == "position":
            band = np.r_[0:EDGE_SITES, self.size - EDGE_SITES:self.size]
        else:
            # FFT ordering puts the largest |p| in the middle of the array.
            half = self.size // 2
            band = np.arange(half - EDGE_SITES, half + EDGE_SITES)
        return float(np.sum(np.abs(self.amplitudes[:, band]) ** 2))

    def with_amplitudes(self, amplitudes: np.ndarray, domain: str | None = None,
                        boundary_warning: bool | None = None) -> "GridState":
        return GridState(
            spectrum=self.spectrum,
            box_length=self.box_length,
            amplitudes=np.ascontiguousarray(amplitudes, dtype=complex),
            domain=self.domain if domain is None else domain,
            boundary_warning=self.boundary_warning if boundary_warning is None else boundary_warning,
        )


def momentum_position_transform(state: GridState, target: str) -> GridState:
    """Unitary change of representation; round trip is the identity to 1e-12.

    The result carries a boundary warning flag when more than EDGE_MASS_TOL
    of probability sits within EDGE_SITES of the target lattice's edge
    (wraparound is about to corrupt the representation).
    """
    if target not in ("position", "momentum"):
        raise ValueError(f"unknown target domain {target!r}")
    if target == state.domain:
        raise ValueError(f"state is already in the {target} domain")
    d = state.size
    x0 = state.positions[0]
    p = state.momenta
    if target == "momentum":
        amps = np.fft.fft(state.amplitudes, axis=1) / np.sqrt(d)
        amps = amps * np.exp(-1j * p * x0)[None, :]
    else:
        amps = np.fft.ifft(state.amplitudes * np.exp(1j * p * x0)[None, :], axis=1) * np.sqrt(d)
    out = state.with_amplitudes(amps, domain=target)
    if out.edge_mass() > EDGE_MASS_TOL:
        out = out.with_amplitudes(amps, boundary_warning=True)
    return out


def gaussian_grid_state(
    spectrum: InternalSpectrum,
    size: int = 256,
    box_length: float = 64.0,
    sigma: float = 4.0,
    center: float = 0.0,
    momentum: float = 0.0,
    weights=None,
) -> GridState:
    """Normalized Gaussian wavepacket, identical on every occupied level.

    Defaults put the packet's momentum support (width 1/2 sigma) on roughly
    a twelfth of the momentum lattice and its position support well inside
    the box, leaving room for boost kicks and drifts.
    """
    if weights is None:
        weights = np.ones(spectrum.dim)
    weights = np.asarray(weights, dtype=complex)
    if weights.shape != (spectrum.dim,):
        raise ValueError("need one weight per internal level")
    x = (np.arange(size) - size // 2) * (box_length / size)
    packet = np.exp(-((x - center) ** 2) / (4.0 * sigma**2) + 1j * momentum * x)
    amps = weights[:, None] * packet[None, :]
    amps = amps / np.linalg.norm(amps)
    return GridState(spectrum=spectrum, box_length=float(box_length), amplitudes=amps)
