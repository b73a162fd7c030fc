"""Named invariant checks for every module, runnable as one deterministic
suite (CLI ``verify`` / ``dirac-verify``).

Each check reports a residual and the threshold it was held to; seeds are
fixed so that repeated runs produce byte-identical reports.
"""

from dataclasses import dataclass

import numpy as np

from . import counting, dirac, fock, ladder, oscillator
from .contours import (
    Contour,
    bare_loop_cutoff_slope,
    derivative_jumps,
    jump_at_zero,
    numeric_contour_oracle,
    oracle_tolerance,
    regularised_tail_drift,
    smoothness_order,
    time_domain_propagator,
)
from .ladder import MassLadder, decompose, g_f_scalar, recursion_residual, sum_rule_residuals

LADDER_N1 = (1.0, 10.0)
LADDER_N2 = (1.0, 2.0, 4.0)
LADDER_N4 = (1.0, 2.0, 4.0, 8.0, 16.0)
STANDARD_LADDERS = (LADDER_N1, LADDER_N2, LADDER_N4)


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    threshold: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name} {status} residual={self.residual:.6e} tol={self.threshold:.3e}"


def _bounded(name, residual, threshold):
    return CheckResult(name, residual <= threshold, float(residual), float(threshold))


def _exceeds(name, residual, threshold):
    """For structural-failure checks: the residual must EXCEED threshold."""
    return CheckResult(name, residual > threshold, float(residual), float(threshold))


def _random_z(rng, scale, masses, count):
    zs = []
    while len(zs) < count:
        z = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        if all(abs(z - m) > 1e-3 * m for m in masses):
            zs.append(z)
    return zs


# ---------------------------------------------------------------- reg_algebra

def check_reconstruction(tol=None):
    tol = 1e-10 if tol is None else tol
    rng = np.random.default_rng(2024)
    worst = 0.0
    ladders = [MassLadder(ms) for ms in STANDARD_LADDERS]
    for _ in range(2):
        base = rng.uniform(0.5, 2.0)
        ratios = rng.uniform(1.5, 5.0, size=3)
        ladders.append(MassLadder(tuple(base * np.cumprod(np.r_[1.0, ratios]))))
    for lad in ladders:
        c = decompose(lad).coefficients
        ms = lad.as_array()
        for z in _random_z(rng, 3.0 * ms.max(), ms, 200):
            direct = g_f_scalar(lad, 0, lad.n_regulators, z)
            rebuilt = (c / (ms - z)).sum()
            worst = max(worst, abs(rebuilt - direct) / abs(direct))
    return _bounded("reg_algebra.reconstruction", worst, tol)


def check_recursion(tol=None):
    tol = 1e-12 if tol is None else tol
    rng = np.random.default_rng(7)
    worst = 0.0
    for ms in STANDARD_LADDERS:
        lad = MassLadder(ms)
        arr = lad.as_array()
        zs = _random_z(rng, 3.0 * arr.max(), arr, 100)
        for K in range(lad.n_regulators):
            for L in range(K + 1, lad.n_regulators + 1):
                for z in zs:
                    rel = recursion_residual(lad, K, L, z) / abs(
                        g_f_scalar(lad, K, L, z)
                    )
                    worst = max(worst, rel)
    return _bounded("reg_algebra.recursion", worst, tol)


def check_sum_rules(tol=None):
    tol = 1e-12 if tol is None else tol
    worst = 0.0
    for ms in STANDARD_LADDERS:
        lad = MassLadder(ms)
        res = sum_rule_residuals(decompose(lad), lad)
        if res:
            worst = max(worst, max(res))
    return _bounded("reg_algebra.sum_rules", worst, tol)


def check_sign_pattern(tol=None):
    tol = 0.0 if tol is None else tol
    rng = np.random.default_rng(11)
    mismatches = 0
    for _ in range(10):
        n = int(rng.integers(1, 7))
        ratios = rng.uniform(1.2, 8.0, size=n)
        lad = MassLadder(tuple(rng.uniform(0.2, 2.0) * np.cumprod(np.r_[1.0, ratios])))
        signs = decompose(lad).signs
        expected = np.array([(-1) ** k for k in range(n + 1)])
        mismatches += int((signs != expected).sum())
    return _bounded("reg_algebra.sign_pattern", mismatches, tol)


def check_sigma_hierarchy(tol=None):
    tol = 0.01 if tol is None else tol
    rng = np.random.default_rng(23)
    worst_pair = 0.0
    worst_tail = 0.0
    for _ in range(5):
        n = int(rng.integers(2, 5))
        ratios = np.exp(rng.uniform(np.log(100.0), np.log(1000.0), size=n))
        lad = MassLadder(tuple(rng.uniform(0.5, 2.0) * np.cumprod(np.r_[1.0, ratios])))
        w = decompose(lad).weights
        worst_pair = max(worst_pair, abs(w[0] - w[1]))
        worst_tail = max(worst_tail, float(np.abs(w[2:]).max()))
    result = _bounded("reg_algebra.sigma_hierarchy", worst_pair, tol)
    if worst_tail >= 0.15:
        result.passed = False
        result.residual = worst_tail
    return result


def _scalar_falloff_slope(lad):
    radii = np.logspace(3, 6, 7)
    mags = [
        abs(g_f_scalar(lad, 0, lad.n_regulators, r * np.exp(1j * np.pi / 4)))
        for r in radii
    ]
    return float(np.polyfit(np.log(radii), np.log(mags), 1)[0])


def check_scalar_falloff(tol=None):
    tol = 0.05 if tol is None else tol
    worst = 0.0
    for ms in STANDARD_LADDERS:
        lad = MassLadder(ms)
        slope = _scalar_falloff_slope(lad)
        worst = max(worst, abs(slope + lad.n_regulators + 1))
    return _bounded("reg_algebra.falloff", worst, tol)


# ------------------------------------------------------------------- contours

def check_residue_vs_quadrature(tol=None):
    tol = 1.0 if tol is None else tol  # residual is a ratio to per-case tolerance
    lad = MassLadder(LADDER_N1)
    eps, lam = 1e-4, 1e4
    worst = 0.0
    for K, L in ((0, 0), (0, 1), (1, 1)):
        for tau in (-2.0, -0.5, 0.1, 0.5, 2.0):
            for contour in Contour:
                res = time_domain_propagator(lad, contour, K, L, tau)
                if contour in (Contour.FEYNMAN, Contour.RETARDED):
                    quad = numeric_contour_oracle(lad, contour, K, L, tau, eps, lam)
                    case_tol = oracle_tolerance(lad, K, L, eps, lam)
                else:
                    quad = numeric_contour_oracle(lad, contour, K, L, tau)
                    case_tol = 1e-6
                worst = max(worst, abs(res - quad) / case_tol)
    return _bounded("contours.residue_vs_quadrature", worst, tol)


def check_retarded_equals_feynman(tol=None):
    tol = 1e-14 if tol is None else tol
    lad = MassLadder(LADDER_N2)
    worst = 0.0
    for tau in np.linspace(-3.0, 3.0, 25):
        for K in range(3):
            for L in range(K, 3):
                worst = max(
                    worst,
                    abs(
                        time_domain_propagator(lad, Contour.FEYNMAN, K, L, tau)
                        - time_domain_propagator(lad, Contour.RETARDED, K, L, tau)
                    ),
                )
    return _bounded("contours.retarded_equals_feynman", worst, tol)


def check_plus_minus_closed(tol=None):
    tol = 1e-12 if tol is None else tol
    worst = 0.0
    for ms in (LADDER_N1, LADDER_N2):
        lad = MassLadder(ms)
        n = lad.n_regulators
        for tau in np.linspace(-2.0, 2.0, 17):
            for K in range(n + 1):
                for L in range(n + 1):
                    both = time_domain_propagator(
                        lad, Contour.PLUS, K, L, tau
                    ) + time_domain_propagator(lad, Contour.MINUS, K, L, tau)
                    closed = time_domain_propagator(lad, Contour.CLOSED, K, L, tau)
                    worst = max(worst, abs(both - closed))
    return _bounded("contours.plus_minus_closed", worst, tol)


def check_smoothness(tol=None):
    tol = 1e-10 if tol is None else tol
    worst = 0.0
    ok = True
    for ms in STANDARD_LADDERS:
        lad = MassLadder(ms)
        n = lad.n_regulators
        if time_domain_propagator(lad, Contour.FEYNMAN, 0, n, 0.0) != 0:
            ok = False
        jumps = derivative_jumps(lad)
        worst = max(worst, max(jumps[:n]))
        if smoothness_order(lad) != n:
            ok = False
        if abs(jump_at_zero(lad, 0, n)) > tol:
            ok = False
    result = _bounded("contours.regularised_smoothness", worst, tol)
    result.passed = result.passed and ok
    return result


def check_cutoff_log_slope(tol=None):
    tol = 0.05 if tol is None else tol
    slope = bare_loop_cutoff_slope()
    return _bounded("contours.cutoff_log_slope", abs(slope - 1.0), tol)


def check_regularised_tail(tol=None):
    tol = 1e-3 if tol is None else tol
    drift = regularised_tail_drift(MassLadder(LADDER_N1))
    return _bounded("contours.regularised_tail", drift, tol)


# ----------------------------------------------------------------- oscillator

def check_dual_commutators(tol=None):
    tol = 1e-13 if tol is None else tol
    rng = np.random.default_rng(31)
    systems = [oscillator.FilterSystem()]
    for _ in range(2):
        w0 = rng.uniform(0.5, 2.0)
        systems.append(oscillator.FilterSystem(w0, w0 * rng.uniform(2.0, 20.0)))
    worst = 0.0
    for system in systems:
        d = fock.build_dual_operators(system, 6)
        eye = np.eye(d.basis.dim)
        for i, a in enumerate((d.a_0, d.a_1)):
            for j, b in enumerate((d.b0_dag, d.b1_dag)):
                delta = 1.0 if i == j else 0.0
                defect = fock.protected_defect(
                    fock.commutator(a, b) - delta * eye, d.basis
                )
                worst = max(worst, defect)
    return _bounded("oscillator.dual_commutators", worst, tol)


def check_hamiltonian_equivalence(tol=None):
    tol = 1e-12 if tol is None else tol
    system = oscillator.FilterSystem()
    f = fock.build_fock_operators(oscillator.DEFAULT_N_MAX)
    free = (
        system.omega0 * f.a0_dag @ f.a0 + system.omega1 * f.a1_dag @ f.a1
    )
    h0 = fock.hamiltonian_matrix(system, oscillator.DEFAULT_N_MAX, 0.0)
    return _bounded(
        "oscillator.hamiltonian_equivalence", np.abs(h0 - free).max(), tol
    )


def check_pseudo_hermiticity(tol=None):
    tol = 1e-13 if tol is None else tol
    system = oscillator.FilterSystem()
    n_max = 6
    metric = fock.sign_operator(n_max)
    worst = 0.0
    for v in (0.3, -0.7, 1.2):
        h = fock.hamiltonian_matrix(system, n_max, v)
        worst = max(worst, np.abs(fock.pseudo_adjoint(h, metric) - h).max())
    return _bounded("oscillator.pseudo_hermiticity", worst, tol)


def check_kubo_response(tol=None):
    tol = 1e-8 if tol is None else tol
    system = oscillator.FilterSystem()
    taus = np.linspace(0.0, 10.0, 200)
    resp, ode_defect = oscillator.response_grid(system, taus)
    worst = float(ode_defect)
    for tau, r in zip(taus, resp):
        kubo = oscillator.kubo_commutator(system, oscillator.DEFAULT_N_MAX, tau)
        theta = 1.0 if tau > 0 else 0.0
        worst = max(worst, abs(1j * theta * kubo - r))
    return _bounded("oscillator.kubo_response", worst, tol)


def check_born_scaling(tol=None):
    tol = 0.2 if tol is None else tol
    system = oscillator.FilterSystem()
    residuals = []
    v0s = (0.01, 0.02, 0.04)
    for v0 in v0s:
        drive = oscillator.DriveSignal(v0=v0)
        exact = oscillator.born_converged_amplitude(system, drive)
        partial = sum(oscillator.born_series(system, drive, 3))
        residuals.append(abs(exact - partial) / abs(exact))
    slope = np.polyfit(np.log(v0s), np.log(residuals), 1)[0]
    return _bounded("oscillator.born_scaling", abs(slope - 4.0), tol)


def check_born_vs_transfer(tol=None):
    # trapezoid-vs-RK4 discretisation gap at the default step is ~4e-7
    tol = 1e-5 if tol is None else tol
    system = oscillator.FilterSystem()
    drive = oscillator.DriveSignal()
    volterra = oscillator.born_converged_amplitude(system, drive)
    exact = oscillator.born_exact_amplitude(system, drive)
    return _bounded("oscillator.born_vs_transfer", abs(volterra - exact), tol)


def check_s_matrix_i_unitary(tol=None):
    tol = 1e-8 if tol is None else tol
    system = oscillator.FilterSystem()
    drive = oscillator.DriveSignal(v0=0.1)
    worst = 0.0
    for n_total in (1, 2):
        s = oscillator.sector_s_matrix(system, drive, n_total)
        metric = oscillator.sector_sign_operator(n_total)
        defect = np.linalg.norm(
            metric @ s.conj().T @ metric @ s - np.eye(n_total + 1)
        )
        worst = max(worst, defect)
    return _bounded("oscillator.s_matrix_i_unitary", worst, tol)


def check_s_matrix_not_unitary(tol=None):
    tol = 1e-3 if tol is None else tol
    system = oscillator.FilterSystem()
    # A pulse wide in frequency (T = 0.25, bandwidth at the mode splitting):
    # slow drives are adiabatic and hide the structural non-unitarity.
    drive = oscillator.DriveSignal(v0=0.5, width=0.25, t_min=-2.0, t_max=2.0)
    s = oscillator.sector_s_matrix(system, drive, 1, step=2e-4)
    defect = np.linalg.norm(s.conj().T @ s - np.eye(2))
    return _exceeds("oscillator.s_matrix_not_unitary", defect, tol)


def check_tadpole(tol=None):
    tol = 0.0 if tol is None else tol
    system = oscillator.FilterSystem()
    worst = 0.0
    for v0 in (0.0, 0.1, 0.5):
        for width in (0.5, 1.0):
            drive = oscillator.DriveSignal(v0=v0, width=width)
            worst = max(worst, abs(oscillator.vacuum_tadpole(system, drive)))
    return _bounded("oscillator.tadpole", worst, tol)


# ---------------------------------------------------------------------- dirac

def _gammas():
    return dirac.GammaSet.dirac()


def check_clifford(tol=None):
    tol = 1e-15 if tol is None else tol
    g = _gammas()
    eye = np.eye(4)
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            anti = g.matrices[mu] @ g.matrices[nu] + g.matrices[nu] @ g.matrices[mu]
            worst = max(worst, np.abs(anti - 2 * dirac.METRIC[mu, nu] * eye).max())
    return _bounded("dirac.clifford", worst, tol)


def _random_momenta(rng, count, complex_p0=False):
    out = []
    for _ in range(count):
        p0 = complex(rng.normal(), rng.normal() if complex_p0 else 0.0)
        out.append(dirac.FourMomentum(0.35 + p0, tuple(rng.normal(size=3) * 0.5)))
    return out


def check_spectral(tol=None):
    tol = 1e-11 if tol is None else tol
    g = _gammas()
    rng = np.random.default_rng(41)
    worst = 0.0
    for ms in (LADDER_N1, LADDER_N2):
        lad = ladder.MassLadder(ms)
        n = lad.n_regulators
        for p in _random_momenta(rng, 6, complex_p0=True):
            mat = dirac.g_f_matrix(lad, 0, n, p, g)
            eig = np.sort_complex(np.linalg.eigvals(mat))
            root = np.sqrt(complex(p.p_squared))
            expected = np.sort_complex(
                np.array(
                    [
                        g_f_scalar(lad, 0, n, root),
                        g_f_scalar(lad, 0, n, root),
                        g_f_scalar(lad, 0, n, -root),
                        g_f_scalar(lad, 0, n, -root),
                    ]
                )
            )
            worst = max(worst, np.abs(eig - expected).max())
    return _bounded("dirac.spectral", worst, tol)


def check_matrix_recursion(tol=None):
    tol = 1e-12 if tol is None else tol
    g = _gammas()
    rng = np.random.default_rng(43)
    worst = 0.0
    for ms in (LADDER_N1, LADDER_N2):
        lad = ladder.MassLadder(ms)
        n = lad.n_regulators
        for p in _random_momenta(rng, 5, complex_p0=True):
            for K in range(n):
                for L in range(K + 1, n + 1):
                    rel = dirac.matrix_recursion_residual(
                        lad, K, L, p, g
                    ) / np.linalg.norm(dirac.g_f_matrix(lad, K, L, p, g))
                    worst = max(worst, rel)
    return _bounded("dirac.matrix_recursion", worst, tol)


def check_equal_time(tol=None):
    tol = 1e-10 if tol is None else tol
    g = _gammas()
    rng = np.random.default_rng(47)
    worst = 0.0
    g0 = g.g0
    for ms in STANDARD_LADDERS:
        lad = ladder.MassLadder(ms)
        n = lad.n_regulators
        for _ in range(50):
            pvec = tuple(rng.normal(size=3))
            for K in range(n + 1):
                for L in range(n + 1):
                    val = dirac.equal_time_anticommutator(lad, K, L, pvec, g)
                    target = g0 if K == L else np.zeros((4, 4))
                    worst = max(worst, float(np.linalg.norm(val - target)))
    return _bounded("dirac.equal_time", worst, tol)


def check_inversion(tol=None):
    tol = 1e-12 if tol is None else tol
    g = _gammas()
    rng = np.random.default_rng(53)
    worst = 0.0
    eye = np.eye(4)
    for ms in (LADDER_N1, LADDER_N2, LADDER_N4):
        lad = ladder.MassLadder(ms)
        n = lad.n_regulators
        for p in _random_momenta(rng, 5):
            prod = dirac.inverse_filter_polynomial(lad, p, g) @ dirac.g_f_matrix(
                lad, 0, n, p, g
            )
            worst = max(worst, float(np.linalg.norm(prod - eye)))
    return _bounded("dirac.inversion", worst, tol)


def check_dirac_falloff(tol=None):
    tol = 0.05 if tol is None else tol
    g = _gammas()
    worst = 0.0
    for ms in STANDARD_LADDERS:
        lad = ladder.MassLadder(ms)
        exponent = dirac.falloff_exponent(lad, (0.3, -0.2, 0.5), g)
        worst = max(worst, abs(exponent - (lad.n_regulators + 1)))
    return _bounded("dirac.falloff", worst, tol)


def check_keldysh_partition(tol=None):
    tol = 1e-10 if tol is None else tol
    g = _gammas()
    worst = 0.0
    pvec = (0.3, -0.2, 0.5)
    for ms in STANDARD_LADDERS:
        lad = ladder.MassLadder(ms)
        n = lad.n_regulators
        for tau in (-1.5, -0.4, 0.0, 0.4, 1.5):
            plus = dirac.contraction_time_domain(lad, Contour.PLUS, pvec, tau, g)
            minus = dirac.contraction_time_domain(lad, Contour.MINUS, pvec, tau, g)
            closed = dirac.contraction_time_domain(lad, Contour.CLOSED, pvec, tau, g)
            worst = max(worst, float(np.linalg.norm(plus + minus - closed)))
        if n >= 1:
            # tau -> 0+ limit is i*PLUS(0), tau -> 0- limit is -i*MINUS(0);
            # their difference is i*CLOSED(0), killed by the sum rules.
            plus0 = dirac.contraction_time_domain(lad, Contour.PLUS, pvec, 0.0, g)
            minus0 = dirac.contraction_time_domain(lad, Contour.MINUS, pvec, 0.0, g)
            worst = max(worst, float(np.linalg.norm(1j * (plus0 + minus0))))
        closed0 = dirac.contraction_time_domain(lad, Contour.CLOSED, pvec, 0.0, g)
        target = g.g0 if n == 0 else np.zeros((4, 4))
        anticomm = dirac.equal_time_anticommutator(lad, n, 0, pvec, g)
        worst = max(worst, float(np.linalg.norm(closed0 - anticomm)))
        worst = max(worst, float(np.linalg.norm(closed0 - target)))
    return _bounded("dirac.keldysh_partition", worst, tol)


# ------------------------------------------------------------------- counting

def check_paper_claims(tol=None):
    tol = 0.0 if tol is None else tol
    mismatches = sum(0 if ok else 1 for _, _, ok in counting.claim_table())
    return _bounded("counting.paper_claims", mismatches, tol)


def check_monotonicity(tol=None):
    tol = 0.0 if tol is None else tol
    bad = 0
    for diag in counting.CANONICAL_DIAGRAMS:
        for n in range(6):
            drop = counting.superficial_degree(diag, n) - counting.superficial_degree(
                diag, n + 1
            )
            if drop != diag.fermion_internal:
                bad += 1
    return _bounded("counting.monotonicity", bad, tol)


def check_falloff_consistency(tol=None):
    tol = 0.05 if tol is None else tol
    g = _gammas()
    worst = 0.0
    for ms in (LADDER_N1, LADDER_N2):
        lad = ladder.MassLadder(ms)
        exponent = dirac.falloff_exponent(lad, (0.1, 0.2, -0.3), g)
        worst = max(worst, abs(exponent - (1 + lad.n_regulators)))
    return _bounded("counting.falloff_consistency", worst, tol)


ALL_CHECKS = (
    ("reg_algebra.reconstruction", check_reconstruction),
    ("reg_algebra.recursion", check_recursion),
    ("reg_algebra.sum_rules", check_sum_rules),
    ("reg_algebra.sign_pattern", check_sign_pattern),
    ("reg_algebra.sigma_hierarchy", check_sigma_hierarchy),
    ("reg_algebra.falloff", check_scalar_falloff),
    ("contours.residue_vs_quadrature", check_residue_vs_quadrature),
    ("contours.retarded_equals_feynman", check_retarded_equals_feynman),
    ("contours.plus_minus_closed", check_plus_minus_closed),
    ("contours.regularised_smoothness", check_smoothness),
    ("contours.cutoff_log_slope", check_cutoff_log_slope),
    ("contours.regularised_tail", check_regularised_tail),
    ("oscillator.dual_commutators", check_dual_commutators),
    ("oscillator.hamiltonian_equivalence", check_hamiltonian_equivalence),
    ("oscillator.pseudo_hermiticity", check_pseudo_hermiticity),
    ("oscillator.kubo_response", check_kubo_response),
    ("oscillator.born_scaling", check_born_scaling),
    ("oscillator.born_vs_transfer", check_born_vs_transfer),
    ("oscillator.s_matrix_i_unitary", check_s_matrix_i_unitary),
    ("oscillator.s_matrix_not_unitary", check_s_matrix_not_unitary),
    ("oscillator.tadpole", check_tadpole),
    ("dirac.clifford", check_clifford),
    ("dirac.spectral", check_spectral),
    ("dirac.matrix_recursion", check_matrix_recursion),
    ("dirac.equal_time", check_equal_time),
    ("dirac.inversion", check_inversion),
    ("dirac.falloff", check_dirac_falloff),
    ("dirac.keldysh_partition", check_keldysh_partition),
    ("counting.paper_claims", check_paper_claims),
    ("counting.monotonicity", check_monotonicity),
    ("counting.falloff_consistency", check_falloff_consistency),
)

MODULE_NAMES = ("reg_algebra", "contours", "oscillator", "dirac", "counting")


def run_checks(only=None, tol=None):
    """Run the suite (optionally restricted to one module's checks)."""
    if only is not None and only not in MODULE_NAMES:
        raise ValueError(f"unknown module {only!r}; choose from {MODULE_NAMES}")
    results = []
    for name, fn in ALL_CHECKS:
        if only is not None and not name.startswith(only + "."):
            continue
        results.append(fn(tol))
    return results


def render_report(results):
    lines = [r.line() for r in results]
    n_fail = sum(0 if r.passed else 1 for r in results)
    lines.append(f"TOTAL {len(results)} checks, {n_fail} failed")
    return "\n".join(lines) + "\n"
