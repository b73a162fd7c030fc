import cmath

import numpy as np
import pytest

from regfilter.errors import OracleMismatch, StepTooLarge
from regfilter.oscillator import (
    DriveSignal,
    FilterSystem,
    born_converged_amplitude,
    born_exact_amplitude,
    born_series,
    evolve_transfer,
    kubo_commutator,
    one_quantum_s_amplitude,
    response_function,
    response_grid,
    sector_s_matrix,
    sector_sign_operator,
    vacuum_tadpole,
)

SYSTEM = FilterSystem(1.0, 10.0)
FINE = 5e-4


def test_system_validation_and_sigma():
    assert SYSTEM.sigma_sq == pytest.approx(10.0 / 9.0, rel=1e-15)
    assert SYSTEM.sigma**2 == pytest.approx(SYSTEM.sigma_sq, rel=1e-14)
    with pytest.raises(ValueError):
        FilterSystem(10.0, 1.0)


def test_drive_window_rule():
    d = DriveSignal()
    assert d.vbar == pytest.approx(0.1 * np.sqrt(2.0 * np.pi))
    assert d(0.0) == 0.1
    with pytest.raises(ValueError):
        DriveSignal(width=2.0)  # default window is too narrow for T=2


def test_transfer_identity_and_step_guard():
    drive = DriveSignal()
    assert np.array_equal(evolve_transfer(SYSTEM, drive, 1.0, 1.0, 1e-3), np.eye(2))
    with pytest.raises(StepTooLarge):
        evolve_transfer(SYSTEM, drive, 0.0, 1.0, 0.5)


def test_free_transfer_determinant_modulus_one():
    drive = DriveSignal(v0=0.0)
    u = evolve_transfer(SYSTEM, drive, 0.0, 1.0, FINE)
    assert abs(abs(np.linalg.det(u)) - 1.0) <= 1e-8


def test_transfer_composition():
    drive = DriveSignal()
    u_full = evolve_transfer(SYSTEM, drive, -8.0, 8.0, FINE)
    u_lo = evolve_transfer(SYSTEM, drive, -8.0, 0.0, FINE)
    u_hi = evolve_transfer(SYSTEM, drive, 0.0, 8.0, FINE)
    assert np.abs(u_hi @ u_lo - u_full).max() <= 1e-8


def test_transfer_richardson_order_four():
    drive = DriveSignal()
    u1 = evolve_transfer(SYSTEM, drive, -8.0, 8.0, FINE)
    u2 = evolve_transfer(SYSTEM, drive, -8.0, 8.0, FINE / 2.0)
    u3 = evolve_transfer(SYSTEM, drive, -8.0, 8.0, FINE / 4.0)
    d12 = np.abs(u1 - u2).max()
    d23 = np.abs(u2 - u3).max()
    assert d12 < 1e-9
    assert np.log2(d12 / d23) > 3.7


def test_response_retardation_and_value():
    assert response_function(SYSTEM, -1.0) == 0.0
    assert response_function(SYSTEM, 0.0) == 0.0
    expected = 1j * (10.0 / 9.0) * (cmath.exp(-1j) - cmath.exp(-10j))
    assert response_function(SYSTEM, 1.0) == pytest.approx(expected, abs=1e-14)


def test_response_continuity_at_zero():
    tau = 1e-6
    val = response_function(SYSTEM, tau, check=False)
    # O(tau) bound: |R| <= sigma^2 (w1 - w0) tau plus curvature
    assert abs(val) <= 2.0 * SYSTEM.sigma_sq * (SYSTEM.omega1 - SYSTEM.omega0) * tau


def test_response_grid_matches_ode():
    taus = np.linspace(0.0, 10.0, 200)
    values, defect = response_grid(SYSTEM, taus)
    assert defect <= 1e-8
    assert values[0] == 0.0


def test_response_oracle_mismatch_detected():
    with pytest.raises(OracleMismatch):
        # a hopelessly coarse step cannot track the w1 = 10 oscillation
        response_function(SYSTEM, 8.0, step=0.45)


def test_kubo_equal_time_vanishes():
    assert abs(kubo_commutator(SYSTEM, 8, 0.0)) < 1e-14


def test_kubo_matches_response():
    for tau in (0.3, 1.0, 5.0):
        coeff = kubo_commutator(SYSTEM, 8, tau)
        assert abs(1j * coeff - response_function(SYSTEM, tau, check=False)) < 1e-13


def test_kubo_commutator_value():
    coeff = kubo_commutator(SYSTEM, 6, 1.0)
    expected = (10.0 / 9.0) * (cmath.exp(-1j) - cmath.exp(-10j))
    assert coeff == pytest.approx(expected, abs=1e-14)


def test_born_order_zero_is_free_evolution():
    drive = DriveSignal()
    terms = born_series(SYSTEM, drive, 0)
    expected = SYSTEM.sigma * cmath.exp(-1j * SYSTEM.omega0 * drive.t_max)
    assert terms[0] == pytest.approx(expected, abs=1e-14)


def test_born_multilinearity():
    t1 = born_series(SYSTEM, DriveSignal(v0=0.1), 3)
    t2 = born_series(SYSTEM, DriveSignal(v0=0.2), 3)
    for k in range(4):
        assert abs(t2[k] - 2.0**k * t1[k]) <= 1e-10 * abs(t2[k])


def test_born_order_cap():
    with pytest.raises(ValueError):
        born_series(SYSTEM, DriveSignal(), 7)


def test_born_partial_sums_scale_as_v0_fourth():
    v0s = (0.01, 0.02, 0.04)
    residuals = []
    for v0 in v0s:
        drive = DriveSignal(v0=v0)
        exact = born_converged_amplitude(SYSTEM, drive)
        partial = sum(born_series(SYSTEM, drive, 3))
        residuals.append(abs(exact - partial) / abs(exact))
    slope = np.polyfit(np.log(v0s), np.log(residuals), 1)[0]
    assert abs(slope - 4.0) <= 0.2


def test_born_converges_to_transfer_amplitude():
    drive = DriveSignal(v0=0.1)
    volterra = born_converged_amplitude(SYSTEM, drive)
    exact = born_exact_amplitude(SYSTEM, drive)
    assert abs(volterra - exact) < 1e-5  # trapezoid-vs-RK4 floor at T/200
    # partial sums walk monotonically down to that floor
    partials = np.cumsum(born_series(SYSTEM, drive, 5))
    errs = [abs(exact - p) for p in partials]
    assert all(errs[i + 1] < errs[i] for i in range(4))


def test_tadpole_exactly_zero():
    for v0 in (0.0, 0.1, 0.5):
        assert vacuum_tadpole(SYSTEM, DriveSignal(v0=v0)) == 0.0


def test_tadpole_unregularised_counterpart():
    # replacing the regularised loop value by the bare theta(0+) one gives
    # (-i) * vbar * (i) = vbar
    drive = DriveSignal(v0=0.1)
    bare_loop = 1j * cmath.exp(0.0)  # Delta_F^(0,0)(0+)
    assert -1j * drive.vbar * bare_loop == pytest.approx(drive.vbar)


def test_sector_identity_without_drive():
    s = sector_s_matrix(SYSTEM, DriveSignal(v0=0.0), 1)
    assert np.abs(s - np.eye(2)).max() < 1e-12


def test_sector_step_guard():
    with pytest.raises(StepTooLarge):
        sector_s_matrix(SYSTEM, DriveSignal(), 1, step=0.1)
    with pytest.raises(ValueError):
        sector_s_matrix(SYSTEM, DriveSignal(), 9, n_max=8)


@pytest.mark.parametrize("n_total", [1, 2])
def test_sector_pseudo_unitarity(n_total):
    s = sector_s_matrix(SYSTEM, DriveSignal(v0=0.1), n_total)
    metric = sector_sign_operator(n_total)
    defect = np.linalg.norm(metric @ s.conj().T @ metric @ s - np.eye(n_total + 1))
    assert defect <= 1e-8


def test_sector_ordinary_unitarity_fails_for_fast_drive():
    drive = DriveSignal(v0=0.5, width=0.25, t_min=-2.0, t_max=2.0)
    s = sector_s_matrix(SYSTEM, drive, 1, step=2e-4)
    assert np.linalg.norm(s.conj().T @ s - np.eye(2)) > 1e-3
    metric = sector_sign_operator(1)
    assert np.linalg.norm(metric @ s.conj().T @ metric @ s - np.eye(2)) <= 1e-8


def test_sector_amplitude_matches_born_sums():
    drive = DriveSignal(v0=0.1)
    s = sector_s_matrix(SYSTEM, drive, 1)
    amp = one_quantum_s_amplitude(SYSTEM, s, drive.t_max)
    partials = np.cumsum(born_series(SYSTEM, drive, 5))
    errs = [abs(amp - p) for p in partials]
    assert all(errs[i + 1] < errs[i] for i in range(5))
    assert errs[-1] < 1e-5
    assert abs(amp - born_exact_amplitude(SYSTEM, drive)) < 1e-9
