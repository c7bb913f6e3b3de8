"""Lattice wavepackets and the position-momentum transform."""

import numpy as np
import pytest

from qclocksim.grid import GridState, gaussian_grid_state, momentum_position_transform
from qclocksim.spectrum import ladder_spectrum, make_spectrum

SPEC = ladder_spectrum(2, 0.1)


def test_grid_size_must_be_a_power_of_two():
    amps = np.ones((2, 48), dtype=complex)
    amps /= np.linalg.norm(amps)
    with pytest.raises(ValueError):
        GridState(spectrum=SPEC, box_length=32.0, amplitudes=amps)


def test_grid_state_must_be_normalized():
    with pytest.raises(ValueError):
        GridState(spectrum=SPEC, box_length=32.0, amplitudes=np.ones((2, 64), dtype=complex))


def test_lattice_geometry():
    state = gaussian_grid_state(SPEC, size=128, box_length=32.0, sigma=2.0)
    assert state.size == 128
    assert state.positions[0] == -16.0
    assert state.positions[1] - state.positions[0] == pytest.approx(0.25)
    # Momentum lattice is in FFT order with spacing 2 pi / L.
    assert state.momenta[0] == 0.0
    assert state.momentum_spacing == pytest.approx(2.0 * np.pi / 32.0, rel=1e-15)
    assert state.momenta[1] == pytest.approx(state.momentum_spacing, rel=1e-15)
    assert state.momenta[64] == pytest.approx(-64 * state.momentum_spacing, rel=1e-15)


def test_transform_round_trip_is_identity():
    state = gaussian_grid_state(SPEC, size=128, box_length=32.0, sigma=2.0, momentum=0.2)
    there = momentum_position_transform(state, "momentum")
    back = momentum_position_transform(there, "position")
    np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)


def test_transform_rejects_noop_target():
    state = gaussian_grid_state(SPEC, size=64, box_length=32.0, sigma=2.0)
    with pytest.raises(ValueError):
        momentum_position_transform(state, "position")


def test_transform_preserves_norm():
    state = gaussian_grid_state(SPEC, size=256, box_length=64.0, sigma=3.5, momentum=0.1)
    tilde = momentum_position_transform(state, "momentum")
    assert np.linalg.norm(tilde.amplitudes) == pytest.approx(1.0, abs=1e-13)


def test_position_delta_spreads_flat_over_momentum():
    spec1 = make_spectrum([0.0])
    amps = np.zeros((1, 64), dtype=complex)
    amps[0, 0] = 1.0  # delta sitting exactly on the box edge
    state = GridState(spectrum=spec1, box_length=32.0, amplitudes=amps)
    tilde = momentum_position_transform(state, "momentum")
    np.testing.assert_allclose(np.abs(tilde.amplitudes[0]), 1.0 / 8.0, atol=1e-14)
    # A delta at the edge is flagged: wraparound would corrupt any evolution.
    assert tilde.boundary_warning is True


def test_gaussian_moments():
    sigma = 3.0
    state = gaussian_grid_state(SPEC, size=256, box_length=64.0, sigma=sigma, momentum=0.25)
    prob_x = np.sum(np.abs(state.amplitudes) ** 2, axis=0)
    x = state.positions
    mean_x = float(prob_x @ x)
    var_x = float(prob_x @ (x - mean_x) ** 2)
    assert mean_x == pytest.approx(0.0, abs=1e-10)
    assert np.sqrt(var_x) == pytest.approx(sigma, rel=1e-6)

    tilde = momentum_position_transform(state, "momentum")
    prob_p = np.sum(np.abs(tilde.amplitudes) ** 2, axis=0)
    p = tilde.momenta
    mean_p = float(prob_p @ p)
    var_p = float(prob_p @ (p - mean_p) ** 2)
    assert mean_p == pytest.approx(0.25, rel=1e-8)
    # Minimum-uncertainty packet: sigma_x sigma_p = 1/2.
    assert np.sqrt(var_x * var_p) == pytest.approx(0.5, rel=1e-4)


def test_edge_mass_sees_an_offcenter_packet():
    centered = gaussian_grid_state(SPEC, size=128, box_length=32.0, sigma=2.0)
    shifted = gaussian_grid_state(SPEC, size=128, box_length=32.0, sigma=2.0, center=14.0)
    assert centered.edge_mass() < 1e-12
    assert shifted.edge_mass() > 1e-3


def test_level_weights_follow_requested_weights():
    state = gaussian_grid_state(SPEC, size=64, box_length=32.0, sigma=2.0, weights=[1.0, 2.0])
    w = np.sum(np.abs(state.amplitudes) ** 2, axis=1)
    assert w[1] / w[0] == pytest.approx(4.0, rel=1e-12)


def test_weights_must_match_spectrum():
    with pytest.raises(ValueError):
        gaussian_grid_state(SPEC, size=64, box_length=32.0, sigma=2.0, weights=[1.0])
