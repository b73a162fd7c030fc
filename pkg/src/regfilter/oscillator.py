"""The exactly solvable two-mode filter: transfer dynamics, linear response,
Kubo commutators, Born series, vacuum tadpole and the sector S-matrix.

The model couples a physical mode (frequency omega0) to a fictitious one
(omega1 > omega0) through the dual operator sets of :mod:`regfilter.fock`.
Amplitude dynamics closes on the c-number pair (A_(0), A_(1)):

    (w0 - i d/dt) A_(0) = v(t) A_(1)
    (w1 - i d/dt) A_(1) = w1 A_(0)

a signal circulating in a feedback loop.  Everything here is a pure
function of (system, drive, grid); integration uses the classical
fixed-step RK4 kernel.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .contours import Contour, time_domain_propagator
from .errors import NonScalarCommutator, OracleMismatch, StepTooLarge
from .fock import build_fock_operators
from .ladder import MassLadder

DEFAULT_N_MAX = 8
DEFAULT_STEP = 1.0 / 200.0  # T/200 for the default unit-width pulse
# Classical RK4 phase error is ~(w1*h)^5/120 per step; tight (1e-8..1e-9)
# tolerance checks need the finer step below.
FINE_STEP = 1.0 / 2000.0
RESPONSE_ORACLE_TOL = 1e-8
KUBO_SCALAR_TOL = 1e-12
MAX_BORN_ORDER = 6


@dataclass(frozen=True)
class FilterSystem:
    """Physical frequency omega0 and fictitious frequency omega1 > omega0."""

    omega0: float = 1.0
    omega1: float = 10.0

    def __post_init__(self):
        if not (0.0 < self.omega0 < self.omega1):
            raise ValueError(
                f"need 0 < omega0 < omega1, got ({self.omega0}, {self.omega1})"
            )

    @property
    def sigma(self):
        return 1.0 / np.sqrt(1.0 - self.omega0 / self.omega1)

    @property
    def sigma_sq(self):
        return self.omega1 / (self.omega1 - self.omega0)

    @property
    def ladder(self):
        return MassLadder((self.omega0, self.omega1))


@dataclass(frozen=True)
class DriveSignal:
    """Gaussian pulse v(t) = v0 exp(-(t-center)^2 / (2 T^2)) on a window
    that extends at least 8T on each side of the center."""

    v0: float = 0.1
    width: float = 1.0
    t_min: float = -8.0
    t_max: float = 8.0
    center: float = 0.0

    def __post_init__(self):
        if self.width <= 0.0:
            raise ValueError("pulse width must be positive")
        if self.t_max - self.center < 8.0 * self.width or (
            self.center - self.t_min < 8.0 * self.width
        ):
            raise ValueError("window must cover >= 8T on each side of the pulse")

    @property
    def vbar(self):
        """Integral of v over all times: v0 * T * sqrt(2 pi)."""
        return self.v0 * self.width * np.sqrt(2.0 * np.pi)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.v0 * np.exp(-((t - self.center) ** 2) / (2.0 * self.width**2))


def _free_generator(system):
    """-i * [[w0, 0], [-w1, w1]] acting on (A_(0), A_(1))."""
    w0, w1 = system.omega0, system.omega1
    return -1j * np.array([[w0, 0.0], [-w1, w1]], dtype=complex)


_DRIVE_COUPLING = np.array([[0.0, 1j], [0.0, 0.0]], dtype=complex)
_ZERO2 = np.zeros((2, 2), dtype=complex)


def _grid(t_i, t_f, step):
    span = t_f - t_i
    n = max(1, int(np.ceil(span / step - 1e-9)))
    return n, span / n


def evolve_transfer(system, drive, t_i, t_f, step):
    """2x2 transfer matrix U(t_f, t_i) propagating (A_(0), A_(1)).

    Classical RK4 at fixed step (the step is shrunk, never stretched, to
    divide the span exactly), so U(t3,t2) U(t2,t1) = U(t3,t1) whenever t2
    lies on the step grid."""
    if t_i > t_f:
        raise ValueError("need t_i <= t_f")
    if step > drive.width / 100.0 * (1.0 + 1e-12):
        raise StepTooLarge(f"step {step} exceeds T/100 = {drive.width / 100.0}")
    if t_i == t_f:
        return np.eye(2, dtype=complex)
    n, h = _grid(t_i, t_f, step)
    v_half = drive(t_i + 0.5 * h * np.arange(2 * n + 1))
    out = kernels.rk4_evolve(
        _free_generator(system),
        _DRIVE_COUPLING,
        _ZERO2,
        _ZERO2,
        0.0,
        v_half,
        h,
        t_i,
        np.eye(2, dtype=complex),
        n,
    )
    return out[-1]


def _response_residue(system, tau):
    if tau <= 0.0:
        return 0j
    s2 = system.sigma_sq
    return 1j * s2 * (np.exp(-1j * system.omega0 * tau) - np.exp(-1j * system.omega1 * tau))


def _delta_source_a1(system, taus, step):
    """A_(1) along `taus` (uniform, starting at 0) after a unit impulse of
    the source at t = 0, i.e. from the initial pair (i, 0)."""
    taus = np.asarray(taus, dtype=float)
    if taus[0] != 0.0:
        raise ValueError("trajectory grid must start at tau = 0")
    spacing = taus[1] - taus[0] if len(taus) > 1 else taus[0]
    m = max(1, int(np.ceil(spacing / step - 1e-9)))
    h = spacing / m
    n = m * (len(taus) - 1)
    v_half = np.zeros(2 * n + 1)
    x0 = np.array([[1j], [0.0]], dtype=complex)
    out = kernels.rk4_evolve(
        _free_generator(system), _DRIVE_COUPLING, _ZERO2, _ZERO2, 0.0,
        v_half, h, 0.0, x0, m,
    )
    return out[:, 1, 0]


def response_function(system, tau, step=FINE_STEP, check=True):
    """delta A_(1)(t) / delta s(t') at tau = t - t'.

    Evaluated two ways: (a) the residue form
    i*theta(tau)*sigma^2*(exp(-i w0 tau) - exp(-i w1 tau)) and (b) the
    delta-source solution of the amplitude equations; they must agree to
    1e-8.  Returns (a).  Vanishes for tau <= 0 and is continuous at 0."""
    residue = _response_residue(system, tau)
    if check and tau > 0.0:
        ode = _delta_source_a1(system, np.array([0.0, tau]), step)[-1]
        if abs(ode - residue) > RESPONSE_ORACLE_TOL:
            raise OracleMismatch(
                f"response routes disagree by {abs(ode - residue):.3e} at tau={tau}"
            )
    return residue


def response_grid(system, taus, step=FINE_STEP):
    """Residue-form response on a uniform grid starting at 0, cross-checked
    once against a single delta-source trajectory.  Returns (values, defect)."""
    taus = np.asarray(taus, dtype=float)
    residue = np.array([_response_residue(system, t) for t in taus])
    ode = _delta_source_a1(system, taus, step)
    defect = float(np.abs(ode - residue).max())
    if defect > RESPONSE_ORACLE_TOL:
        raise OracleMismatch(f"response grid defect {defect:.3e}")
    return residue, defect


def kubo_commutator(system, n_max, tau):
    """c-number coefficient of [a_(1)(t), b+_(0)(t')] at tau = t - t'.

    Built from the interaction-picture operator matrices; the commutator
    must be that coefficient times identity on the protected subspace.
    i*theta(tau)*coefficient reproduces :func:`response_function`."""
    f = build_fock_operators(n_max)
    s = system.sigma
    w0, w1 = system.omega0, system.omega1
    a1_t = s * (f.a0 * np.exp(-1j * w0 * tau) + f.a1 * np.exp(-1j * w1 * tau))
    b0_dag = s * (f.a0_dag - f.a1_dag)
    comm = a1_t @ b0_dag - b0_dag @ a1_t
    coeff = complex(comm[0, 0])
    cols = f.basis.protected_indices()
    defect = np.abs(
        (comm - coeff * np.eye(f.basis.dim))[:, cols]
    ).max()
    if defect > KUBO_SCALAR_TOL:
        raise NonScalarCommutator(
            f"commutator deviates from a scalar by {defect:.3e}"
        )
    return coeff


def _born_grid(drive, step):
    n, h = _grid(drive.t_min, drive.t_max, step)
    return drive.t_min + h * np.arange(n + 1)


def _in_state_free_amplitude(system, tgrid):
    """Free <0| a_(1)(t) |1 physical quantum>: a pure exp(-i w0 t) line."""
    return system.sigma * np.exp(-1j * system.omega0 * tgrid)


def _volterra_terms(system, drive, order, step):
    """Per-order iterates of the time-ordered integral equation
    A(t) = A_free(t) + int^t K(t-t') v(t') A(t') dt'  with the regularised
    kernel K = Delta_F^(0,1).  Returns (tgrid, [A^(0), ..., A^(order)])."""
    tgrid = _born_grid(drive, step)
    coeffs = np.array([system.sigma_sq, -system.sigma_sq], dtype=complex)
    masses = np.array([system.omega0, system.omega1])
    v = drive(tgrid)
    terms = [_in_state_free_amplitude(system, tgrid)]
    for _ in range(order):
        terms.append(kernels.born_iterate(coeffs, masses, tgrid, v, terms[-1]))
    return tgrid, terms


def born_series(system, drive, order, step=DEFAULT_STEP):
    """Per-order corrections to the out-mode amplitude of one physical
    quantum; term k carries k kernel*v factors and scales as v0^k."""
    if not 0 <= order <= MAX_BORN_ORDER:
        raise ValueError(f"order must be in 0..{MAX_BORN_ORDER}")
    _, terms = _volterra_terms(system, drive, order, step)
    return [complex(t[-1]) for t in terms]


def born_converged_amplitude(system, drive, step=DEFAULT_STEP, max_order=40):
    """Fixed point of the discretised integral equation (all orders summed);
    the step-for-step reference for partial-sum scaling tests."""
    _, terms = _volterra_terms(system, drive, max_order, step)
    total = np.zeros_like(terms[0])
    for t in terms:
        total = total + t
        if np.abs(t).max() <= 1e-17 * max(1.0, np.abs(total).max()):
            break
    return complex(total[-1])


def born_exact_amplitude(system, drive, step=DEFAULT_STEP):
    """The same out-mode amplitude from the transfer-matrix evolution."""
    g_i = np.exp(-1j * system.omega0 * drive.t_min) / system.sigma
    f_i = system.sigma * np.exp(-1j * system.omega0 * drive.t_min)
    u = evolve_transfer(system, drive, drive.t_min, drive.t_max, step)
    return complex(u[1, 0] * g_i + u[1, 1] * f_i)


def vacuum_tadpole(system, drive):
    """First-order vacuum-phase contribution in the regularised technique:
    (-i) * vbar * Delta_F^(0,1)(0).  Exactly zero."""
    loop = time_domain_propagator(system.ladder, Contour.FEYNMAN, 0, 1, 0.0)
    return -1j * drive.vbar * loop


def _sector_number_operators(n_total):
    """a_i+ a_j restricted to the total-quanta = n_total sector.

    Sector basis: n0 = 0..n_total (n1 = n_total - n0), consistent with the
    global ordering of :class:`regfilter.fock.FockBasis`."""
    d = n_total + 1
    n0 = np.arange(d, dtype=float)
    a00 = np.diag(n0).astype(complex)
    a11 = np.diag(n_total - n0).astype(complex)
    a01 = np.zeros((d, d), dtype=complex)
    a10 = np.zeros((d, d), dtype=complex)
    for i in range(d - 1):
        # a0+ a1 : |n0, n1> -> sqrt((n0+1) n1) |n0+1, n1-1>
        a01[i + 1, i] = np.sqrt((i + 1) * (n_total - i))
        # a1+ a0 : |n0, n1> -> sqrt(n0 (n1+1)) |n0-1, n1+1>
        a10[i, i + 1] = np.sqrt((i + 1) * (n_total - i))
    return a00, a01, a10, a11


def sector_sign_operator(n_total):
    """The indefinite metric restricted to one total-quanta sector."""
    n0 = np.arange(n_total + 1)
    return np.diag(((-1.0 + 0j) ** (n_total - n0)))


def sector_s_matrix(system, drive, n_total, step=FINE_STEP, n_max=DEFAULT_N_MAX):
    """Interaction-picture S-matrix on a fixed total-quanta sector.

    The interaction -v(t) b+_(0)(t) a_(1)(t) conserves total quanta, so the
    sector evolution is exact (no truncation artifact).  The result is
    I-unitary -- I S+ I S = 1 -- to integration tolerance, while ordinary
    unitarity fails at finite drive strength."""
    if n_total > n_max:
        raise ValueError(f"n_total={n_total} exceeds n_max={n_max}")
    if step > drive.width / 100.0 * (1.0 + 1e-12):
        raise StepTooLarge(f"step {step} exceeds T/100 = {drive.width / 100.0}")
    a00, a01, a10, a11 = _sector_number_operators(n_total)
    s2 = system.sigma_sq
    delta = system.omega1 - system.omega0
    # dS/dt = i v(t) B(t) S,  B(t) = s2*(a00 - a11 + a01 e^{-i dt} - a10 e^{+i dt})
    b0 = 1j * s2 * (a00 - a11)
    b1 = 1j * s2 * a01
    b2 = -1j * s2 * a10
    n, h = _grid(drive.t_min, drive.t_max, step)
    v_half = drive(drive.t_min + 0.5 * h * np.arange(2 * n + 1))
    zero = np.zeros_like(b0)
    out = kernels.rk4_evolve(
        zero, b0, b1, b2, delta, v_half, h, drive.t_min,
        np.eye(n_total + 1, dtype=complex), n,
    )
    return out[-1]


def one_quantum_s_amplitude(system, s_matrix, t_f):
    """<0| a_(1)(t_f) S |one physical quantum> from the n_total = 1 sector
    S-matrix (basis |0,1>, |1,0>); the quantity the Born series builds."""
    w0, w1 = system.omega0, system.omega1
    return system.sigma * complex(
        np.exp(-1j * w0 * t_f) * s_matrix[1, 1]
        + np.exp(-1j * w1 * t_f) * s_matrix[0, 1]
    )
