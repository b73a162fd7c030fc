"""Two-mode truncated Fock space: ladder operators, dual sets, sign metric.

Basis convention (documented and canonical): states |n0, n1> with
n0 + n1 <= n_max, ordered by total quanta and then by n0, i.e.
|0,0>, |0,1>, |1,0>, |0,2>, |1,1>, |2,0>, ...  The dimension is
(n_max+1)(n_max+2)/2.

Truncation policy: every operator identity is exact on the "protected"
states with total quanta <= n_max - 1; only the top sector feels the cut.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch


class FockBasis:
    """Two-mode number basis {|n0, n1> : n0 + n1 <= n_max}."""

    def __init__(self, n_max):
        if n_max < 2:
            raise ValueError("n_max must be at least 2")
        self.n_max = int(n_max)
        self.states = [
            (n0, total - n0)
            for total in range(self.n_max + 1)
            for n0 in range(total + 1)
        ]
        self._index = {st: i for i, st in enumerate(self.states)}

    @property
    def dim(self):
        return len(self.states)

    def index(self, n0, n1):
        return self._index[(n0, n1)]

    def protected_indices(self):
        """Indices of states with total quanta <= n_max - 1."""
        return [i for i, (a, b) in enumerate(self.states) if a + b <= self.n_max - 1]


@dataclass(frozen=True, eq=False)
class FockOperators:
    a0: np.ndarray
    a1: np.ndarray
    a0_dag: np.ndarray
    a1_dag: np.ndarray
    basis: FockBasis


@dataclass(frozen=True, eq=False)
class DualOperators:
    """The dual set: a_(0), a_(1) and b+_(0), b+_(1) as matrices.

    a_(1) = sigma*(a0 + a1),  a_(0) = a0/sigma,
    b+_(0) = sigma*(a0+ - a1+),  b+_(1) = a1+/sigma.
    """

    a_0: np.ndarray
    a_1: np.ndarray
    b0_dag: np.ndarray
    b1_dag: np.ndarray
    basis: FockBasis


def build_fock_operators(n_max):
    """Standard two-mode annihilation/creation matrices, <n-1|a|n> = sqrt(n)."""
    basis = FockBasis(n_max)
    d = basis.dim
    a0 = np.zeros((d, d), dtype=complex)
    a1 = np.zeros((d, d), dtype=complex)
    for i, (n0, n1) in enumerate(basis.states):
        if n0 > 0:
            a0[basis.index(n0 - 1, n1), i] = np.sqrt(n0)
        if n1 > 0:
            a1[basis.index(n0, n1 - 1), i] = np.sqrt(n1)
    return FockOperators(
        a0=a0, a1=a1, a0_dag=a0.conj().T, a1_dag=a1.conj().T, basis=basis
    )


def build_dual_operators(system, n_max):
    """Dual operator pair satisfying [a_(L), b+_(K)] = delta_LK on the
    protected subspace."""
    f = build_fock_operators(n_max)
    s = system.sigma
    return DualOperators(
        a_0=f.a0 / s,
        a_1=s * (f.a0 + f.a1),
        b0_dag=s * (f.a0_dag - f.a1_dag),
        b1_dag=f.a1_dag / s,
        basis=f.basis,
    )


def sign_operator(n_max):
    """Diagonal metric (-1)^{n1}: the mode-1 quanta carry negative norm."""
    basis = FockBasis(n_max)
    return np.diag([(-1.0 + 0j) ** n1 for (_, n1) in basis.states])


def pseudo_adjoint(X, I):
    """X with-double-dagger = I X+ I, the adjoint of the indefinite product."""
    X = np.asarray(X)
    I = np.asarray(I)
    if X.shape != I.shape or X.shape[0] != X.shape[1]:
        raise DimensionMismatch(
            f"incompatible shapes {X.shape} and {I.shape}"
        )
    return I @ X.conj().T @ I


def hamiltonian_matrix(system, n_max, v):
    """The driven filter Hamiltonian
    H = w0 b+_(0) a_(0) + w1 b+_(1) a_(1) - w1 b+_(1) a_(0) - v b+_(0) a_(1).

    Conserves total quanta (block diagonal over number sectors); at v = 0
    it equals w0 a0+ a0 + w1 a1+ a1 as an exact matrix identity."""
    d = build_dual_operators(system, n_max)
    w0, w1 = system.omega0, system.omega1
    return (
        w0 * d.b0_dag @ d.a_0
        + w1 * d.b1_dag @ d.a_1
        - w1 * d.b1_dag @ d.a_0
        - v * d.b0_dag @ d.a_1
    )


def commutator(A, B):
    return A @ B - B @ A


def protected_defect(M, basis):
    """Largest entry of M on the columns of protected states."""
    cols = basis.protected_indices()
    return float(np.abs(M[:, cols]).max())
