import numpy as np
import pytest

from regfilter.errors import DimensionMismatch
from regfilter.fock import (
    FockBasis,
    build_dual_operators,
    build_fock_operators,
    commutator,
    hamiltonian_matrix,
    protected_defect,
    pseudo_adjoint,
    sign_operator,
)
from regfilter.oscillator import FilterSystem

SYSTEM = FilterSystem(1.0, 10.0)


def test_basis_dimension_and_order():
    basis = FockBasis(2)
    assert basis.dim == 6
    assert basis.states == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_basis_requires_two_quanta():
    with pytest.raises(ValueError):
        FockBasis(1)


def test_annihilation_matrix_element():
    f = build_fock_operators(2)
    assert f.a0[f.basis.index(0, 0), f.basis.index(1, 0)] == 1.0
    assert f.a1[f.basis.index(1, 0), f.basis.index(1, 1)] == 1.0
    assert f.a0[f.basis.index(1, 0), f.basis.index(2, 0)] == pytest.approx(np.sqrt(2))


def test_canonical_commutator_on_protected_subspace():
    f = build_fock_operators(4)
    eye = np.eye(f.basis.dim)
    for a, adag in ((f.a0, f.a0_dag), (f.a1, f.a1_dag)):
        assert protected_defect(commutator(a, adag) - eye, f.basis) < 1e-14


def test_dual_commutators_are_kronecker_delta():
    d = build_dual_operators(SYSTEM, 5)
    eye = np.eye(d.basis.dim)
    pairs = {(0, 0): 1.0, (0, 1): 0.0, (1, 0): 0.0, (1, 1): 1.0}
    duals_a = (d.a_0, d.a_1)
    duals_b = (d.b0_dag, d.b1_dag)
    for (i, j), delta in pairs.items():
        defect = protected_defect(
            commutator(duals_a[i], duals_b[j]) - delta * eye, d.basis
        )
        assert defect <= 1e-13


def test_dual_matrix_elements():
    d = build_dual_operators(SYSTEM, 3)
    b = d.basis
    sigma = SYSTEM.sigma
    # <0,0| a_(1) |1,0> = sigma
    assert d.a_1[b.index(0, 0), b.index(1, 0)] == pytest.approx(sigma)
    # b+_(0) |0,0> = sigma (|1,0> - |0,1>)
    column = d.b0_dag[:, b.index(0, 0)]
    expected = np.zeros(b.dim, dtype=complex)
    expected[b.index(1, 0)] = sigma
    expected[b.index(0, 1)] = -sigma
    assert np.allclose(column, expected, atol=1e-15)


def test_free_hamiltonian_equivalence_exact():
    f = build_fock_operators(8)
    free = SYSTEM.omega0 * f.a0_dag @ f.a0 + SYSTEM.omega1 * f.a1_dag @ f.a1
    h0 = hamiltonian_matrix(SYSTEM, 8, 0.0)
    assert np.abs(h0 - free).max() <= 1e-12


def test_hamiltonian_structure():
    h = hamiltonian_matrix(SYSTEM, 4, 0.37)
    basis = FockBasis(4)
    # vacuum is annihilated
    assert h[0, 0] == 0.0
    # block diagonal over total quanta
    totals = np.array([a + b for a, b in basis.states])
    off = h[totals[:, None] != totals[None, :]]
    assert np.abs(off).max() < 1e-14
    # one-quantum trace is w0 + w1 independent of the drive
    sector = [basis.index(1, 0), basis.index(0, 1)]
    assert h[np.ix_(sector, sector)].trace() == pytest.approx(11.0)


def test_sign_operator_squares_to_identity():
    metric = sign_operator(3)
    assert np.array_equal(metric @ metric, np.eye(FockBasis(3).dim))
    assert set(np.diag(metric).real) == {1.0, -1.0}


def test_pseudo_adjoint_involution_and_products():
    rng = np.random.default_rng(99)
    n_max = 3
    dim = FockBasis(n_max).dim
    metric = sign_operator(n_max)
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    y = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    assert np.allclose(pseudo_adjoint(pseudo_adjoint(x, metric), metric), x)
    assert np.allclose(
        pseudo_adjoint(x @ y, metric),
        pseudo_adjoint(y, metric) @ pseudo_adjoint(x, metric),
    )
    # antilinearity
    assert np.allclose(pseudo_adjoint(2j * x, metric), -2j * pseudo_adjoint(x, metric))


def test_pseudo_adjoint_of_mode_operators():
    n_max = 4
    f = build_fock_operators(n_max)
    metric = sign_operator(n_max)
    assert np.allclose(pseudo_adjoint(f.a1, metric), -f.a1_dag)
    assert np.allclose(pseudo_adjoint(f.a0, metric), f.a0_dag)


def test_hamiltonian_is_pseudo_hermitian():
    metric = sign_operator(6)
    for v in (0.0, 0.3, -1.1):
        h = hamiltonian_matrix(SYSTEM, 6, v)
        assert np.abs(pseudo_adjoint(h, metric) - h).max() <= 1e-13
    # but NOT ordinarily Hermitian once the drive couples the dual pairs
    h = hamiltonian_matrix(SYSTEM, 6, 0.5)
    assert np.abs(h - h.conj().T).max() > 0.5


def test_pseudo_adjoint_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        pseudo_adjoint(np.eye(3), sign_operator(2))
