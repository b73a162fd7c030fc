"""Momentum-space matrix algebra of the regularised fermion filter.

The scalar ladder functions extend to matrix arguments through the slash
map p -> gamma^mu p_mu; each factor rationalises to

    (1 - pslash/M)^(-1) = M (M + pslash) / (M^2 - p^2),

so every evaluation is a product of polynomials in pslash divided by scalar
denominators.  Poles in the energy plane sit at p_0 = +-E_l with
E_l = sqrt(M_l^2 + |p|^2); closed- and sideband-contour integrals are sums
of analytic residues over those poles.

Conventions: metric (+,-,-,-), Dirac representation of the gamma matrices
(any representation works; fixing one makes results bit-comparable).
"""

from dataclasses import dataclass

import numpy as np

from .contours import Contour
from .errors import IndexOrder, IndexOutOfRange, PoleProximity, TauZeroUndefined

CLIFFORD_TOL = 1e-15
POLE_GUARD_SQ = 1e-10  # relative guard on |p^2 - M^2|

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True, eq=False)
class GammaSet:
    """The four gamma matrices; {g^mu, g^nu} = 2 g^{mu nu}."""

    g0: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray

    def __post_init__(self):
        for g in self.matrices:
            g.setflags(write=False)
        eye = np.eye(4)
        for mu in range(4):
            for nu in range(4):
                anti = (
                    self.matrices[mu] @ self.matrices[nu]
                    + self.matrices[nu] @ self.matrices[mu]
                )
                if np.abs(anti - 2.0 * METRIC[mu, nu] * eye).max() > CLIFFORD_TOL:
                    raise ValueError(f"Clifford relation fails at ({mu}, {nu})")

    @property
    def matrices(self):
        return (self.g0, self.g1, self.g2, self.g3)

    @classmethod
    def dirac(cls):
        """Standard Dirac representation: g0 = diag(1,1,-1,-1),
        g^i = [[0, sigma_i], [-sigma_i, 0]]."""
        g0 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
        spatial = []
        for s in _SIGMA:
            g = np.zeros((4, 4), dtype=complex)
            g[:2, 2:] = s
            g[2:, :2] = -s
            spatial.append(g)
        return cls(g0, *spatial)


@dataclass(frozen=True)
class FourMomentum:
    """Energy p0 (possibly complex) and spatial momentum, natural units."""

    p0: complex
    pvec: tuple

    def __post_init__(self):
        object.__setattr__(self, "p0", complex(self.p0))
        pv = tuple(float(x) for x in self.pvec)
        if len(pv) != 3:
            raise ValueError("pvec must have three components")
        if not (np.isfinite(self.p0.real) and np.isfinite(self.p0.imag)) or not all(
            np.isfinite(pv)
        ):
            raise ValueError("momentum components must be finite")
        object.__setattr__(self, "pvec", pv)

    @property
    def p_squared(self):
        return self.p0**2 - sum(x * x for x in self.pvec)


def slash(gammas, p):
    """pslash = g0 p0 - gvec . pvec; satisfies pslash^2 = p^2 * identity."""
    out = gammas.g0 * p.p0
    for g, comp in zip((gammas.g1, gammas.g2, gammas.g3), p.pvec):
        out = out - g * comp
    return out


def g_f_matrix(ladder, K, L, p, gammas):
    """G_f(K, L; pslash): the matrix-argument ladder function, as the
    product of rationalised factors M_l (M_l + pslash)/(M_l^2 - p^2).
    Zero matrix for K > L."""
    n = ladder.n_regulators
    if not (0 <= K <= n and 0 <= L <= n):
        raise IndexOutOfRange(f"indices ({K}, {L}) outside 0..{n}")
    if K > L:
        return np.zeros((4, 4), dtype=complex)
    psq = p.p_squared
    sl = slash(gammas, p)
    eye = np.eye(4, dtype=complex)
    out = eye / ladder.masses[K]
    for l in range(K, L + 1):
        m = ladder.masses[l]
        denom = m * m - psq
        if abs(denom) <= POLE_GUARD_SQ * m * m:
            raise PoleProximity(
                f"p^2 = {psq} within guard distance of M_{l}^2 = {m * m}"
            )
        out = out @ (m * (m * eye + sl) / denom)
    return out


def matrix_recursion_residual(ladder, K, L, p, gammas):
    """Largest norm defect of the two recursion identities with matrix
    argument; <= 1e-12 relative to ||G_f(K, L; pslash)||."""
    if K >= L:
        raise IndexOrder(f"recursion needs K < L, got K={K}, L={L}")
    ms = ladder.masses
    sl = slash(gammas, p)
    eye = np.eye(4, dtype=complex)
    g = g_f_matrix(ladder, K, L, p, gammas)
    r_down = np.linalg.norm(
        (ms[L] * eye - sl) / ms[L] @ g - g_f_matrix(ladder, K, L - 1, p, gammas)
    )
    r_up = np.linalg.norm(
        (ms[K] * eye - sl) / ms[K + 1] @ g - g_f_matrix(ladder, K + 1, L, p, gammas)
    )
    return float(max(r_down, r_up))


def inverse_filter_polynomial(ladder, p, gammas):
    """(M_0 - pslash)(1 - pslash/M_1)...(1 - pslash/M_N): the momentum-space
    symbol of the closed single-field equation.  Its product with
    G_f(0, N; pslash) is the identity off shell."""
    sl = slash(gammas, p)
    eye = np.eye(4, dtype=complex)
    out = ladder.masses[0] * eye - sl
    for m in ladder.masses[1:]:
        out = out @ (eye - sl / m)
    return out


def _range_residues(ladder, first, last, pvec, gammas, tau):
    """Residues of G_f(first, last; pslash(p0)) * exp(-i p0 tau) in the
    energy variable, at each pole s*E_l.  Yields (sign, residue matrix).

    The factors share the single matrix pslash(p0), so the numerator is an
    ordinary commuting product; denominators factor as (E_l - p0)(E_l + p0)
    and every pole is simple because the E_l are distinct."""
    ms = np.array(ladder.masses[first : last + 1])
    psq_space = sum(x * x for x in pvec)
    energies = np.sqrt(ms * ms + psq_space)
    eye = np.eye(4, dtype=complex)
    gvec_dot_p = sum(
        g * comp for g, comp in zip((gammas.g1, gammas.g2, gammas.g3), pvec)
    )
    out = []
    for j, ej in enumerate(energies):
        for s in (1.0, -1.0):
            p0 = s * ej
            sl = gammas.g0 * p0 - gvec_dot_p
            num = eye / ms[0]
            for m in ms:
                num = num @ (m * (m * eye + sl))
            dden = -2.0 * p0
            for l, el in enumerate(energies):
                if l != j:
                    dden *= el * el - ej * ej
            out.append((s, np.exp(-1j * p0 * tau) * num / dden))
    return out


def equal_time_anticommutator(ladder, K, L, pvec, gammas):
    """Momentum-space equal-time anticommutator of the dual fields: the
    closed-contour energy integral of G_f(L, K; pslash).  Equals
    delta_KL * g0; the zero for L > K needs no integration at all."""
    n = ladder.n_regulators
    if not (0 <= K <= n and 0 <= L <= n):
        raise IndexOutOfRange(f"indices ({K}, {L}) outside 0..{n}")
    if L > K:
        return np.zeros((4, 4), dtype=complex)
    total = np.zeros((4, 4), dtype=complex)
    for _, res in _range_residues(ladder, L, K, pvec, gammas, 0.0):
        total += res
    return -total


def contraction_time_domain(ladder, contour, pvec, tau, gammas):
    """Contour-selected energy integral of G_f(0, N; pslash) exp(-i p0 tau).

    CLOSED sums all poles; PLUS/MINUS split them by energy sign with
    PLUS + MINUS = CLOSED; FEYNMAN propagates positive energies forward in
    time (tau > 0) and negative energies backward (tau < 0)."""
    if contour not in (Contour.FEYNMAN, Contour.PLUS, Contour.MINUS, Contour.CLOSED):
        raise ValueError(f"contour {contour} not defined for contractions")
    residues = _range_residues(ladder, 0, ladder.n_regulators, pvec, gammas, tau)
    plus = np.zeros((4, 4), dtype=complex)
    minus = np.zeros((4, 4), dtype=complex)
    for s, res in residues:
        if s > 0:
            plus -= res
        else:
            minus -= res
    if contour is Contour.CLOSED:
        return plus + minus
    if contour is Contour.PLUS:
        return plus
    if contour is Contour.MINUS:
        return minus
    # Feynman
    if tau > 0.0:
        return 1j * plus
    if tau < 0.0:
        return -1j * minus
    if ladder.n_regulators == 0:
        raise TauZeroUndefined(
            "unregularised Feynman contraction has a jump at tau = 0"
        )
    return 1j * plus  # continuous for N >= 1: equals -i*minus


def falloff_exponent(ladder, pvec, gammas, radii=None):
    """Fitted decay exponent of ||G_f(0, N; pslash)|| along a large-energy
    ray; equals N + 1 (within 0.05), the mechanism behind power counting."""
    if radii is None:
        radii = np.logspace(3, 6, 7)
    norms = []
    for r in radii:
        p = FourMomentum(r * (1.0 + 0.5j), pvec)
        norms.append(
            np.linalg.norm(
                g_f_matrix(ladder, 0, ladder.n_regulators, p, gammas)
            )
        )
    slope = np.polyfit(np.log(radii), np.log(norms), 1)[0]
    return float(-slope)
