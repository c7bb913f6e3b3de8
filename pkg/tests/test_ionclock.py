"""Trapped-ion clock: branch spectra, oracle shifts, and driven lineshapes.

The closed-form oracle is re-derived here at 50-digit precision with mpmath
and compared against the package's double-precision values, so any slip in
the shipped formulas shows up against an independent computation.
"""

import numpy as np
import pytest
from mpmath import mp

from qclocksim.errors import GridTooNarrowError
from qclocksim.ionclock import (
    TrapModel,
    _p_squared,
    _x_operator,
    _x_squared,
    branch_spectrum_oracle,
    displacement_operator,
    shift_comparison,
    spectroscopy_scan,
    static_hamiltonians,
)

U, W = 1e-3, 1e-5


def test_ground_branch_is_exactly_harmonic():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    h_ground, h_excited = static_hamiltonians(model)
    n = np.arange(model.fock_cutoff)
    np.testing.assert_array_equal(h_ground, np.diag(W * (n + 0.5)))
    np.testing.assert_allclose(h_excited, h_excited.conj().T, atol=0.0)


def test_kinetic_and_potential_cancellation():
    # (1/2) w^2 X^2 + (1/2) P^2 is w (n + 1/2): the quadrature off-diagonals
    # cancel algebraically, leaving at most rounding residue in doubles.
    # This is why the shipped ground branch is built directly as a diagonal.
    h = 0.5 * W * W * _x_squared(12, W) + 0.5 * _p_squared(12, W)
    target = np.diag(W * (np.arange(12) + 0.5))
    np.testing.assert_allclose(h, target, rtol=1e-15, atol=1e-20)


def test_excited_branch_eigenvalues_follow_the_scaled_frequency():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    _, h_excited = static_hamiltonians(model)
    w_e = W / np.sqrt(1.0 + U)
    levels = np.linalg.eigvalsh(h_excited)[:6]
    expected = U + w_e * (np.arange(6) + 0.5)
    np.testing.assert_allclose(levels, expected, atol=1e-12)


def test_quadrature_matrix_elements():
    x2 = _x_squared(6, W)
    p2 = _p_squared(6, W)
    x = _x_operator(6, W)
    assert x2[0, 0] == pytest.approx(1.0 / (2.0 * W), rel=1e-15)
    assert x2[2, 2] == pytest.approx(5.0 / (2.0 * W), rel=1e-15)
    assert x2[0, 2] == pytest.approx(np.sqrt(2.0) / (2.0 * W), rel=1e-15)
    assert x2[1, 3] == pytest.approx(np.sqrt(6.0) / (2.0 * W), rel=1e-15)
    assert x2[0, 1] == 0.0
    assert p2[0, 0] == pytest.approx(W / 2.0, rel=1e-15)
    assert p2[0, 2] == pytest.approx(-np.sqrt(2.0) * W / 2.0, rel=1e-15)
    assert x[0, 1] == pytest.approx(1.0 / np.sqrt(2.0 * W), rel=1e-15)
    assert x[2, 3] == pytest.approx(np.sqrt(3.0) / np.sqrt(2.0 * W), rel=1e-15)


def test_displacement_operator_is_unitary():
    d = displacement_operator(16, W, 0.3 * np.sqrt(2.0 * W))
    np.testing.assert_allclose(d @ d.conj().T, np.eye(16), atol=1e-12)
    np.testing.assert_allclose(
        displacement_operator(16, W, 0.0), np.eye(16), atol=1e-14
    )
    # Textbook overlap: |<0| e^{ikx} |0>| = e^{-eta^2 / 2}.
    assert abs(d[0, 0]) == pytest.approx(np.exp(-0.5 * 0.3**2), abs=1e-10)


def test_default_drive_parameters():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    assert model.rabi_frequency == pytest.approx(0.03 * W, rel=1e-15)
    assert model.lamb_dicke == pytest.approx(0.05, rel=1e-12)
    assert model.pulse_time == pytest.approx(np.pi / model.rabi_frequency, rel=1e-15)
    assert model.fock_cutoff == 32
    custom = TrapModel.with_lamb_dicke(U, W, 0.12)
    assert custom.lamb_dicke == pytest.approx(0.12, rel=1e-12)


def test_model_validation():
    with pytest.raises(ValueError):
        TrapModel(transition_energy=-1e-3, trap_frequency=W)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=0.0)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=W, fock_index=-1)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=W, fock_cutoff=5)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=W, fock_index=3, fock_cutoff=12)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=W, rabi_frequency=-1.0)
    with pytest.raises(ValueError):
        TrapModel(transition_energy=U, trap_frequency=W, pulse_time=0.0)


def _extended_precision_oracle(u: float, w: float, n: int):
    """Independent 50-digit evaluation of the branch-shift closed forms."""
    mp.dps = 50
    mu, mw = mp.mpf(repr(u)), mp.mpf(repr(w))
    w_e = mw / mp.sqrt(1 + mu)
    n_half = mp.mpf(2 * n + 1) / 2
    carrier = n_half * (w_e - mw)
    return w_e, carrier, carrier / mu


@pytest.mark.parametrize(
    "u, w, n", [(1e-3, 1e-5, 0), (1e-3, 1e-5, 2), (5e-3, 1e-4, 1)]
)
def test_branch_oracle_matches_extended_precision(u, w, n):
    oracle = branch_spectrum_oracle(
        TrapModel(transition_energy=u, trap_frequency=w, fock_index=n)
    )
    w_e, carrier, relative = _extended_precision_oracle(u, w, n)
    assert oracle.excited_trap_frequency == pytest.approx(float(w_e), rel=1e-14)
    # The carrier shift subtracts two nearly equal frequencies, which costs
    # roughly u worth of relative precision in doubles.
    assert oracle.carrier_shift == pytest.approx(float(carrier), rel=1e-11)
    assert oracle.relative_shift == pytest.approx(float(relative), rel=1e-11)


def test_flagship_oracle_point_digits():
    # u = 1e-3, w = 1e-5, ground motional state; values frozen from the
    # 50-digit evaluation.
    oracle = branch_spectrum_oracle(TrapModel(transition_energy=U, trap_frequency=W))
    assert oracle.excited_trap_frequency / W == pytest.approx(
        0.99950037468777319163, rel=1e-14
    )
    assert oracle.relative_shift == pytest.approx(-2.4981265611340418e-06, rel=1e-11)
    assert oracle.first_order_relative == -2.5e-06
    assert oracle.relative_shift / oracle.first_order_relative == pytest.approx(
        0.99925062445361673675, rel=1e-11
    )


def test_second_order_expansion_separates_exact_from_variant():
    oracle = branch_spectrum_oracle(TrapModel(transition_energy=U, trap_frequency=W))
    n_half = 0.5
    assert oracle.second_order_term == pytest.approx(0.375 * U * W * n_half, rel=1e-15)
    assert oracle.second_order_variant == pytest.approx(0.5 * U * W * n_half, rel=1e-15)
    beyond_first = oracle.relative_shift - oracle.first_order_relative
    # The exact Taylor coefficient 3/8 accounts for the residual down to the
    # third order; the 1/2 variant misses it by a hundred times more.
    assert abs(beyond_first - oracle.second_order_term) < 5e-12
    assert abs(beyond_first - oracle.second_order_variant) > 1e-10


def test_null_transition_clock_has_no_shift():
    model = TrapModel(transition_energy=0.0, trap_frequency=W)
    oracle = branch_spectrum_oracle(model)
    assert np.isnan(oracle.relative_shift)
    scan = spectroscopy_scan(model, points=21)
    assert np.isnan(scan.relative_shift)
    assert abs(scan.peak_detuning) < 1e-10
    assert scan.peak_excitation > 0.99


def test_scan_recovers_the_oracle_shift():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    scan = spectroscopy_scan(model, points=31)
    assert abs(scan.relative_shift / scan.oracle.relative_shift - 1.0) < 1e-2
    assert scan.cutoff_shift_change < 1e-10
    assert scan.peak_excitation > 0.9
    assert scan.fit_residual < 1e-3


def test_scan_point_count_validation():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    with pytest.raises(ValueError):
        spectroscopy_scan(model, points=3)


def test_peak_outside_oracle_window_is_refused():
    # A deep-Lamb-Dicke violation with a strong drive drags the line far
    # enough off the static prediction that it leaves the oracle-centered
    # grid; the scan must refuse rather than report the edge sample.
    model = TrapModel.with_lamb_dicke(U, W, 0.3, rabi_frequency=5e-6)
    with pytest.raises(GridTooNarrowError):
        spectroscopy_scan(model)


def test_shift_comparison_assembles_the_budget():
    model = TrapModel(transition_energy=U, trap_frequency=W)
    scan = spectroscopy_scan(model, points=31)
    budget = shift_comparison(model, scan)
    assert budget.fock_index == 0
    assert budget.extracted_relative == scan.relative_shift
    assert budget.oracle_relative == scan.oracle.relative_shift
    assert budget.first_order_relative == scan.oracle.first_order_relative
    assert budget.extracted_to_oracle_ratio == pytest.approx(1.0, abs=1e-2)
    assert budget.oracle_to_first_order_ratio == pytest.approx(
        0.99925062445361673675, rel=1e-11
    )
    assert budget.second_order_term == scan.oracle.second_order_term
    assert budget.second_order_variant == scan.oracle.second_order_variant
