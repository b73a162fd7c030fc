"""Hot numerical kernels, in numba and pure-numpy variants.

Three loops dominate the package runtime and carry ``@njit`` when the numba
backend is active (see :mod:`regfilter._backend`):

* :func:`gk_adaptive`  -- adaptive Gauss-Kronrod line quadrature of the
  oscillatory pole integrand ``exp(-i*omega*tau) * sum_l c_l/(p_l - omega)``,
* :func:`rk4_evolve`   -- classical fixed-step 4th-order evolution of
  ``dX/dt = [A0 + v(t)*(B0 + exp(-i*delta*t)*B1 + exp(+i*delta*t)*B2)] X``,
* :func:`born_iterate` -- one pass of the time-ordered Volterra recursion
  with a retarded multi-pole kernel.

``benchmarks/bench_kernels.py`` compares the two paths.
"""

import numpy as np

from ._backend import USING_NUMBA

# Gauss-7 / Kronrod-15 nodes and weights on [-1, 1] (QUADPACK dqk15 values).
_XGK_HALF = np.array(
    [
        0.9914553711208126,
        0.9491079123427585,
        0.8648644233597691,
        0.7415311855993944,
        0.5860872354676911,
        0.4058451513773972,
        0.2077849550078985,
    ]
)
_WGK_HALF = np.array(
    [
        0.0229353220105292,
        0.0630920926299786,
        0.1047900103222502,
        0.1406532597155259,
        0.1690047266392679,
        0.1903505780647854,
        0.2044329400752989,
    ]
)
_WG_HALF = np.array(
    [0.1294849661688697, 0.2797053914892767, 0.3818300505051189]
)

XGK15 = np.concatenate((-_XGK_HALF, [0.0], _XGK_HALF[::-1]))
WGK15 = np.concatenate((_WGK_HALF, [0.2094821410847278], _WGK_HALF[::-1]))
# Gauss weights sit on the odd Kronrod nodes.
WG15 = np.zeros(15)
WG15[[1, 3, 5]] = _WG_HALF
WG15[7] = 0.4179591836734694
WG15[[9, 11, 13]] = _WG_HALF[::-1]

GK_PANEL_TOL = 1e-9  # absolute error target per accepted panel
GK_MAX_PANELS = 4_000_000


def _gk_adaptive_loop(poles, coeffs, tau, a, b, panel_tol, max_panels):
    """Depth-first adaptive G7/K15 quadrature; left subpanels first.

    Returns (integral, accumulated error estimate, status); status is 0 on
    success, nonzero when the panel budget or stack is exhausted.
    """
    stack_a = np.empty(512)
    stack_b = np.empty(512)
    stack_a[0] = a
    stack_b[0] = b
    sp = 1
    total = 0.0 + 0.0j
    err_sum = 0.0
    panels = 0
    npoles = poles.shape[0]
    while sp > 0:
        sp -= 1
        pa = stack_a[sp]
        pb = stack_b[sp]
        mid = 0.5 * (pa + pb)
        half = 0.5 * (pb - pa)
        k15 = 0.0 + 0.0j
        g7 = 0.0 + 0.0j
        for i in range(15):
            x = mid + half * XGK15[i]
            s = 0.0 + 0.0j
            for l in range(npoles):
                s += coeffs[l] / (poles[l] - x)
            val = np.exp(-1j * tau * x) * s
            k15 += WGK15[i] * val
            g7 += WG15[i] * val
        k15 *= half
        g7 *= half
        err = abs(k15 - g7)
        if err <= panel_tol or (pb - pa) <= 1e-13 * (abs(pa) + abs(pb) + 1.0):
            total += k15
            err_sum += err
            panels += 1
            if panels > max_panels:
                return total, err_sum, 1
        else:
            if sp + 2 > stack_a.shape[0]:
                return total, err_sum, 2
            # push right first so the left half is processed next
            stack_a[sp] = mid
            stack_b[sp] = pb
            sp += 1
            stack_a[sp] = pa
            stack_b[sp] = mid
            sp += 1
    return total, err_sum, 0


def _gk_adaptive_numpy(poles, coeffs, tau, a, b, panel_tol, max_panels):
    """Level-synchronous variant of :func:`_gk_adaptive_loop` (vectorized)."""
    lo = np.array([a])
    hi = np.array([b])
    total = 0.0 + 0.0j
    err_sum = 0.0
    panels = 0
    while lo.size:
        mid = 0.5 * (lo + hi)[:, None]
        half = 0.5 * (hi - lo)[:, None]
        x = mid + half * XGK15[None, :]
        s = (coeffs[None, None, :] / (poles[None, None, :] - x[..., None])).sum(-1)
        vals = np.exp(-1j * tau * x) * s
        k15 = (vals * WGK15).sum(1) * half[:, 0]
        g7 = (vals * WG15).sum(1) * half[:, 0]
        err = np.abs(k15 - g7)
        done = (err <= panel_tol) | (
            (hi - lo) <= 1e-13 * (np.abs(lo) + np.abs(hi) + 1.0)
        )
        total += k15[done].sum()
        err_sum += err[done].sum()
        panels += int(done.sum())
        if panels > max_panels:
            return total, err_sum, 1
        keep = ~done
        la, lb = lo[keep], hi[keep]
        lm = 0.5 * (la + lb)
        # interleave so panels stay in left-to-right order
        lo = np.empty(2 * la.size)
        hi = np.empty(2 * la.size)
        lo[0::2] = la
        lo[1::2] = lm
        hi[0::2] = lm
        hi[1::2] = lb
    return total, err_sum, 0


def _rk4_loop(A0, B0, B1, B2, delta, v_half, h, t0, X0, rec_every):
    """Fixed-step RK4 for dX/dt = M(t) X with
    M(t) = A0 + v(t) * (B0 + exp(-i*delta*t)*B1 + exp(+i*delta*t)*B2).

    ``v_half`` holds samples of v at t0 + k*h/2 (length 2n+1).  The state is
    recorded every ``rec_every`` steps; ``n`` must be divisible by it.
    Returns an array of shape (n/rec_every + 1, *X0.shape).
    """
    n = (v_half.shape[0] - 1) // 2
    d = X0.shape[0]
    m = X0.shape[1]
    out = np.empty((n // rec_every + 1, d, m), dtype=np.complex128)
    X = X0.astype(np.complex128).copy()
    out[0] = X
    r = 1
    for k in range(n):
        t = t0 + k * h
        tm = t + 0.5 * h
        te = t + h
        M1 = A0 + v_half[2 * k] * (
            B0 + np.exp(-1j * delta * t) * B1 + np.exp(1j * delta * t) * B2
        )
        M2 = A0 + v_half[2 * k + 1] * (
            B0 + np.exp(-1j * delta * tm) * B1 + np.exp(1j * delta * tm) * B2
        )
        M4 = A0 + v_half[2 * k + 2] * (
            B0 + np.exp(-1j * delta * te) * B1 + np.exp(1j * delta * te) * B2
        )
        k1 = M1 @ X
        k2 = M2 @ (X + (0.5 * h) * k1)
        k3 = M2 @ (X + (0.5 * h) * k2)
        k4 = M4 @ (X + h * k3)
        X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (k + 1) % rec_every == 0:
            out[r] = X
            r += 1
    return out


def _born_iterate_loop(coeffs, masses, tgrid, v, A_prev):
    """One Volterra step: A_next(t) = int_{t0}^{t} K(t-t') v(t') A_prev(t') dt'
    with K(u) = i * sum_l c_l exp(-i m_l u), by cumulative trapezoid.
    """
    n = tgrid.shape[0]
    h = tgrid[1] - tgrid[0]
    out = np.zeros(n, dtype=np.complex128)
    for l in range(coeffs.shape[0]):
        acc = 0.0 + 0.0j
        prev = np.exp(1j * masses[l] * tgrid[0]) * v[0] * A_prev[0]
        for j in range(1, n):
            cur = np.exp(1j * masses[l] * tgrid[j]) * v[j] * A_prev[j]
            acc += 0.5 * h * (prev + cur)
            prev = cur
            out[j] += 1j * coeffs[l] * np.exp(-1j * masses[l] * tgrid[j]) * acc
    return out


def _born_iterate_numpy(coeffs, masses, tgrid, v, A_prev):
    """Vectorized variant of :func:`_born_iterate_loop`."""
    h = tgrid[1] - tgrid[0]
    out = np.zeros(tgrid.shape[0], dtype=np.complex128)
    for l in range(coeffs.shape[0]):
        g = np.exp(1j * masses[l] * tgrid) * v * A_prev
        cum = np.empty_like(g)
        cum[0] = 0.0
        np.cumsum(0.5 * h * (g[1:] + g[:-1]), out=cum[1:])
        out += 1j * coeffs[l] * np.exp(-1j * masses[l] * tgrid) * cum
    return out


def circle_quadrature(poles, coeffs, tau, center, radius, n):
    """(1/2*pi*i) times the clockwise circle integral of
    exp(-i*omega*tau) * sum_l c_l/(p_l - omega); trapezoid with n nodes.

    Smooth periodic integrand, so this converges spectrally in n; it is not
    a hot path and has no numba variant.
    """
    phi = 2.0 * np.pi * np.arange(n) / n
    w = center + radius * np.exp(-1j * phi)
    f = np.exp(-1j * tau * w) * (coeffs[None, :] / (poles[None, :] - w[:, None])).sum(1)
    return (-radius / n) * (f * np.exp(-1j * phi)).sum()


if USING_NUMBA:
    from numba import njit

    gk_adaptive = njit(cache=True)(_gk_adaptive_loop)
    rk4_evolve = njit(cache=True)(_rk4_loop)
    born_iterate = njit(cache=True)(_born_iterate_loop)
else:
    gk_adaptive = _gk_adaptive_numpy
    rk4_evolve = _rk4_loop
    born_iterate = _born_iterate_numpy


def warm_up():
    """Trigger JIT compilation of all kernels (no-op on the numpy path)."""
    poles = np.array([1.0 - 1e-4j])
    coeffs = np.array([1.0 + 0j])
    gk_adaptive(poles, coeffs, 0.5, -10.0, 10.0, GK_PANEL_TOL, GK_MAX_PANELS)
    eye = np.eye(2, dtype=np.complex128)
    v_half = np.zeros(5)
    rk4_evolve(-1j * eye, 0 * eye, 0 * eye, 0 * eye, 0.0, v_half, 0.1, 0.0, eye, 2)
    t = np.linspace(0.0, 1.0, 8)
    born_iterate(coeffs, np.array([1.0]), t, np.ones(8), np.ones(8, dtype=np.complex128))
