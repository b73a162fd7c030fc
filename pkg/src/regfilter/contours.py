"""Time-domain propagators of the ladder over the energy-plane contours.

All poles of the ladder functions sit on the positive real axis, so the
four contour choices reduce to simple pole-selection rules:

* FEYNMAN / RETARDED pass above every pole: the value is
  i*theta(tau) * sum_l c_l exp(-i M_l tau) with theta(0) = 0.  The two
  contours coincide here; they stay distinct enum members because the
  relativistic (Dirac) case separates them.
* CLOSED encircles all poles, normalised so that the value is
  sum_l c_l exp(-i M_l tau) -- the combination that reproduces equal-time
  commutators at tau = 0.
* PLUS carries the positive-energy poles (all of them in this model) and
  MINUS the negative-energy ones (none), partitioned so that
  PLUS + MINUS = CLOSED pointwise.

Residue evaluation is canonical; :func:`numeric_contour_oracle` rebuilds
the same numbers by explicit line/circle quadrature as an independent
check.
"""

import enum

import numpy as np

from . import kernels
from .errors import IndexOutOfRange, QuadratureFailure
from .ladder import decompose

SUM_RULE_TOL = 1e-8  # relative moment size that counts as "vanishing"


class Contour(enum.Enum):
    FEYNMAN = "feynman"
    RETARDED = "retarded"
    CLOSED = "closed"
    PLUS = "plus"
    MINUS = "minus"


def _sub_poles(ladder, K, L):
    """Masses and partial-fraction coefficients of the sub-ladder M_K..M_L."""
    sub = ladder.sub(K, L)
    return sub.as_array(), decompose(sub).coefficients


def time_domain_propagator(ladder, contour, K, L, tau):
    """Residue value of the (K, L) propagator on the given contour at time
    difference tau.  Returns exactly 0 for K > L."""
    n = ladder.n_regulators
    if not (0 <= K <= n and 0 <= L <= n):
        raise IndexOutOfRange(f"indices ({K}, {L}) outside 0..{n}")
    if K > L:
        return 0j
    ms, c = _sub_poles(ladder, K, L)
    osc = complex((c * np.exp(-1j * ms * tau)).sum())
    if contour in (Contour.FEYNMAN, Contour.RETARDED):
        return 1j * osc if tau > 0 else 0j
    if contour is Contour.CLOSED:
        return osc
    if contour is Contour.PLUS:
        return osc
    if contour is Contour.MINUS:
        return 0j
    raise ValueError(f"unknown contour {contour!r}")


def jump_at_zero(ladder, K, L):
    """Discontinuity of the Feynman propagator across tau = 0:
    i * sum_l c_l.  Equals i for K = L and 0 once L - K >= 1."""
    if K > L:
        return 0j
    _, c = _sub_poles(ladder, K, L)
    return 1j * complex(c.sum())


def smoothness_order(ladder):
    """Largest m such that derivatives 0..m-1 of the Feynman propagator are
    continuous at tau = 0, read off the moment sums c.M^j.  Equals N."""
    ms, c = _sub_poles(ladder, 0, ladder.n_regulators)
    for j in range(ladder.n_regulators + 1):
        terms = c * ms**j
        if abs(terms.sum()) / np.abs(terms).sum() > SUM_RULE_TOL:
            return j
    return ladder.n_regulators + 1


def derivative_jumps(ladder):
    """Normalised jumps of the j-th tau-derivative at 0, j = 0..N."""
    ms, c = _sub_poles(ladder, 0, ladder.n_regulators)
    return [
        float(abs((c * ms**j).sum()) / (np.abs(c) * ms**j).sum())
        for j in range(ladder.n_regulators + 1)
    ]


def oracle_tolerance(ladder, K, L, epsilon, cutoff):
    """Agreement tolerance of the quadrature oracle: 10*(eps + M_max/cutoff)."""
    ms = ladder.masses[K : L + 1]
    return 10.0 * (epsilon + max(ms) / cutoff)


def numeric_contour_oracle(ladder, contour, K, L, tau, epsilon=1e-4, cutoff=1e4):
    """Quadrature realisation of the drawn contours.

    FEYNMAN/RETARDED integrate exp(-i*w*tau)*G/(2*pi) along the real axis
    over [-cutoff, cutoff] with every pole shifted to M_l - i*epsilon
    (contour above the poles).  CLOSED/PLUS use a parameterised circle
    enclosing the picked poles; MINUS integrates over a pole-free circle.
    Agreement with :func:`time_domain_propagator` is within
    :func:`oracle_tolerance` for the line contours and ~1e-6 for circles.
    """
    n = ladder.n_regulators
    if not (0 <= K <= n and 0 <= L <= n):
        raise IndexOutOfRange(f"indices ({K}, {L}) outside 0..{n}")
    if K > L:
        return 0j
    ms, c = _sub_poles(ladder, K, L)
    if contour in (Contour.FEYNMAN, Contour.RETARDED):
        if epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if cutoff <= 10.0 * ms.max():
            raise ValueError("cutoff must exceed 10x the largest mass")
        if len(ms) == 1 and tau == 0.0:
            raise ValueError(
                "single-pole Feynman integrand is undefined at tau = 0"
            )
        poles = ms - 1j * epsilon
        val, _, status = kernels.gk_adaptive(
            poles.astype(complex),
            c.astype(complex),
            float(tau),
            -float(cutoff),
            float(cutoff),
            kernels.GK_PANEL_TOL,
            kernels.GK_MAX_PANELS,
        )
        if status != 0:
            raise QuadratureFailure(
                f"adaptive refinement exhausted (status {status})"
            )
        return val / (2.0 * np.pi)
    if contour in (Contour.CLOSED, Contour.PLUS):
        center = 0.5 * (ms.min() + ms.max())
        radius = 0.5 * (ms.max() - ms.min()) + max(0.5 * ms.min(), 1.0)
        return _circle_converged(ms.astype(complex), c.astype(complex), tau,
                                 center, radius)
    if contour is Contour.MINUS:
        # no poles on the negative axis in this model: any pole-free circle
        center = -2.0 * ms.max()
        radius = 0.5 * ms.max()
        return _circle_converged(ms.astype(complex), c.astype(complex), tau,
                                 center, radius)
    raise ValueError(f"unknown contour {contour!r}")


def _circle_converged(poles, coeffs, tau, center, radius):
    prev = kernels.circle_quadrature(poles, coeffs, tau, center, radius, 512)
    n = 1024
    while n <= 65536:
        cur = kernels.circle_quadrature(poles, coeffs, tau, center, radius, n)
        if abs(cur - prev) <= 1e-10 * (1.0 + abs(cur)):
            return cur
        prev = cur
        n *= 2
    raise QuadratureFailure("circle quadrature did not converge")


def _line_integral(poles, coeffs, a, b):
    val, _, status = kernels.gk_adaptive(
        np.asarray(poles, dtype=complex),
        np.asarray(coeffs, dtype=complex),
        0.0,
        float(a),
        float(b),
        kernels.GK_PANEL_TOL,
        kernels.GK_MAX_PANELS,
    )
    if status != 0:
        raise QuadratureFailure(f"adaptive refinement exhausted (status {status})")
    return val


def bare_loop_cutoff_slope(omega0=1.0, cutoffs=(1e2, 1e3, 1e4)):
    """Fitted growth rate of |int_{w0+1}^{L} dw/(w0 - w)| against ln L.

    The unregularised equal-time loop integrand diverges logarithmically:
    the fitted slope is 1 (within 5%)."""
    mags = [
        abs(_line_integral([omega0 + 0j], [1.0 + 0j], omega0 + 1.0, lam))
        for lam in cutoffs
    ]
    slope = np.polyfit(np.log(np.asarray(cutoffs, dtype=float)), mags, 1)[0]
    return float(slope)


def regularised_tail_drift(ladder, lam=1e4):
    """Change of the one-sided tail integral of G_f(0, N) when the cutoff
    doubles from lam; cutoff-stable (< 1e-3) once N >= 1."""
    ms, c = _sub_poles(ladder, 0, ladder.n_regulators)
    start = ms.max() + 1.0
    t1 = _line_integral(ms, c, start, lam)
    t2 = _line_integral(ms, c, start, 2.0 * lam)
    return abs(t2 - t1)
