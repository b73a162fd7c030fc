"""Benchmark the hot kernels: numba @njit loops vs the pure-numpy path.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from regfilter.kernels import (
    GK_MAX_PANELS,
    GK_PANEL_TOL,
    _born_iterate_loop,
    _born_iterate_numpy,
    _gk_adaptive_loop,
    _gk_adaptive_numpy,
    _rk4_loop,
)

try:
    from numba import njit

    HAVE_NUMBA = True
    gk_jit = njit(cache=True)(_gk_adaptive_loop)
    rk4_jit = njit(cache=True)(_rk4_loop)
    born_jit = njit(cache=True)(_born_iterate_loop)
except ImportError:
    HAVE_NUMBA = False


def timeit(fn, args, repeat=5):
    fn(*args)  # warm-up / JIT compile
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def gk_args():
    poles = np.array([1.0 - 1e-4j, 10.0 - 1e-4j])
    coeffs = np.array([10.0 / 9.0 + 0j, -10.0 / 9.0 + 0j])
    return poles, coeffs, 2.0, -1e4, 1e4, GK_PANEL_TOL, GK_MAX_PANELS


def rk4_args():
    w = np.array([[1.0, 0.0], [-10.0, 10.0]])
    a0 = -1j * w.astype(complex)
    b0 = np.array([[0.0, 1j], [0.0, 0.0]])
    zero = np.zeros((2, 2), dtype=complex)
    n = 32000
    h = 16.0 / n
    t_half = -8.0 + 0.5 * h * np.arange(2 * n + 1)
    v_half = 0.1 * np.exp(-(t_half**2) / 2.0)
    return a0, b0, zero, zero, 0.0, v_half, h, -8.0, np.eye(2, dtype=complex), n


def born_args():
    t = np.linspace(-8.0, 8.0, 3201)
    v = 0.1 * np.exp(-(t**2) / 2.0)
    a = 1.054 * np.exp(-1j * t)
    c = np.array([10.0 / 9.0 + 0j, -10.0 / 9.0 + 0j])
    m = np.array([1.0, 10.0])
    return c, m, t, v, a


def main():
    rows = []
    cases = [
        ("gk_adaptive (tau=2, cutoff=1e4)", gk_args(), _gk_adaptive_numpy,
         gk_jit if HAVE_NUMBA else None),
        ("rk4_evolve (32k steps, 2x2)", rk4_args(), _rk4_loop,
         rk4_jit if HAVE_NUMBA else None),
        ("born_iterate (3201-point grid)", born_args(), _born_iterate_numpy,
         born_jit if HAVE_NUMBA else None),
    ]
    for name, args, numpy_fn, jit_fn in cases:
        t_numpy = timeit(numpy_fn, args)
        t_jit = timeit(jit_fn, args) if jit_fn is not None else float("nan")
        rows.append((name, t_numpy, t_jit))
    print(f"{'kernel':<36} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for name, t_numpy, t_jit in rows:
        speed = t_numpy / t_jit if t_jit == t_jit else float("nan")
        print(f"{name:<36} {1e3 * t_numpy:>12.3f} {1e3 * t_jit:>12.3f} {speed:>8.1f}x")
    if not HAVE_NUMBA:
        print("numba not importable: only the numpy path was timed")


if __name__ == "__main__":
    main()
