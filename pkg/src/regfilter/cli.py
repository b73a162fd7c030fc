"""Deterministic command-line front end.

Subcommands: ``decompose``, ``prop``, ``respond``, ``born``, ``count``,
``dirac-verify``, ``verify``.  Configuration comes from a flat key=value
file (one pair per line, ``#`` comments, lists as ``[a,b,c]``); unknown
keys are rejected.  Numeric output uses 17-significant-digit scientific
notation and LF line endings so identical configs give byte-identical
files.  Exit codes: 0 success, 1 verification failure, 2 config error.
"""

import argparse
import sys

import numpy as np

from . import verify
from .contours import (
    Contour,
    numeric_contour_oracle,
    oracle_tolerance,
    time_domain_propagator,
)
from .counting import (
    CANONICAL_DIAGRAMS,
    DiagramSpec,
    claim_table,
    minimal_regulators,
    superficial_degree,
)
from .errors import ConfigError, FilterError, NoFermionLines
from .ladder import MassLadder, decompose, sum_rule_residuals
from .oscillator import (
    DriveSignal,
    FilterSystem,
    born_exact_amplitude,
    born_series,
    kubo_commutator,
)

DEFAULTS = {
    "masses": [1.0, 10.0],
    "contour": "feynman",
    "tau_min": 0.0,
    "tau_max": 10.0,
    "tau_steps": 200,
    "omega0": 1.0,
    "omega1": 10.0,
    "v0": 0.1,
    "pulse_T": 1.0,
    "n_max": 8,
    "ode_step": 0.005,
    "diagrams": "",
    "tol": None,
}

_FLOAT_KEYS = {"tau_min", "tau_max", "omega0", "omega1", "v0", "pulse_T", "ode_step", "tol"}
_INT_KEYS = {"tau_steps", "n_max"}
_STR_KEYS = {"contour", "diagrams"}

BORN_ORDER = 4  # fixed order of the `born` table
ORACLE_EPSILON = 1e-4
ORACLE_CUTOFF = 1e4


def _fmt(x):
    return f"{x:.16e}"


def _parse_value(key, raw):
    raw = raw.strip()
    try:
        if key == "masses":
            if not (raw.startswith("[") and raw.endswith("]")):
                raise ValueError("expected [a,b,...]")
            items = [s for s in raw[1:-1].split(",") if s.strip()]
            return [float(s) for s in items]
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _STR_KEYS:
            return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r} ({exc})") from None
    raise ConfigError(f"unknown config key {key!r}")


def load_config(path):
    cfg = dict(DEFAULTS)
    if path is None:
        return cfg
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        cfg[key] = _parse_value(key, raw)
    return cfg


def _ladder(cfg):
    if not cfg["masses"]:
        raise ConfigError("masses list is empty")
    return MassLadder(tuple(cfg["masses"]))


def _contour(cfg):
    try:
        return Contour(cfg["contour"].strip().lower())
    except ValueError:
        raise ConfigError(f"unknown contour {cfg['contour']!r}") from None


def _tau_grid(cfg):
    if cfg["tau_steps"] <= 0:
        raise ConfigError("tau_steps must be positive")
    if cfg["tau_max"] < cfg["tau_min"]:
        raise ConfigError("tau_max must be >= tau_min")
    return np.linspace(cfg["tau_min"], cfg["tau_max"], cfg["tau_steps"])


def _system(cfg):
    try:
        return FilterSystem(cfg["omega0"], cfg["omega1"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _drive(cfg):
    t = cfg["pulse_T"]
    try:
        return DriveSignal(v0=cfg["v0"], width=t, t_min=-8.0 * t, t_max=8.0 * t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _parse_diagrams(spec_text):
    diagrams = []
    for chunk in spec_text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, counts = chunk.partition(":")
        parts = counts.split(",")
        if not name or len(parts) != 3:
            raise ConfigError(f"bad diagram spec {chunk!r} (want name:L,F,B)")
        try:
            loops, fi, bi = (int(p) for p in parts)
            diagrams.append(
                DiagramSpec(
                    name.strip(), loops=loops, fermion_internal=fi, photon_internal=bi
                )
            )
        except ValueError as exc:
            raise ConfigError(f"bad diagram spec {chunk!r}: {exc}") from None
    return diagrams


# ------------------------------------------------------------------ commands

def cmd_decompose(cfg, args):
    lad = _ladder(cfg)
    pfd = decompose(lad)
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-12
    lines = ["K,M,c,eps,sigma"]
    for k, m in enumerate(lad.masses):
        lines.append(
            f"{k},{_fmt(m)},{_fmt(pfd.coefficients[k])},"
            f"{pfd.signs[k]:+d},{_fmt(pfd.weights[k])}"
        )
    residuals = sum_rule_residuals(pfd, lad)
    lines.append("j,sum_rule_residual")
    for j, r in enumerate(residuals):
        lines.append(f"{j},{_fmt(r)}")
    ok = all(r <= tol for r in residuals)
    return (0 if ok else 1), "\n".join(lines) + "\n"


def cmd_prop(cfg, args):
    lad = _ladder(cfg)
    contour = _contour(cfg)
    taus = _tau_grid(cfg)
    n = lad.n_regulators
    values = [time_domain_propagator(lad, contour, 0, n, t) for t in taus]
    lines = ["tau,re,im"]
    for t, v in zip(taus, values):
        lines.append(f"{_fmt(t)},{_fmt(v.real)},{_fmt(v.imag)}")
    code = 0
    if getattr(args, "oracle", False):
        stride = max(1, len(taus) // 8)
        for idx in range(0, len(taus), stride):
            tau = float(taus[idx])
            if contour in (Contour.FEYNMAN, Contour.RETARDED):
                if n == 0 and tau == 0.0:
                    continue
                quad = numeric_contour_oracle(
                    lad, contour, 0, n, tau, ORACLE_EPSILON, ORACLE_CUTOFF
                )
                tol = oracle_tolerance(lad, 0, n, ORACLE_EPSILON, ORACLE_CUTOFF)
            else:
                quad = numeric_contour_oracle(lad, contour, 0, n, tau)
                tol = 1e-6
            if cfg["tol"] is not None:
                tol = cfg["tol"]
            if abs(quad - values[idx]) > tol:
                code = 1
                lines.append(
                    f"# oracle mismatch at tau={_fmt(tau)}: "
                    f"|diff|={_fmt(abs(quad - values[idx]))} tol={_fmt(tol)}"
                )
    return code, "\n".join(lines) + "\n"


def cmd_respond(cfg, args):
    system = _system(cfg)
    taus = _tau_grid(cfg)
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-8
    s2 = system.sigma_sq
    lines = ["tau,re_resp,im_resp,re_kubo,im_kubo,absdiff"]
    worst = 0.0
    for tau in taus:
        theta = 1.0 if tau > 0 else 0.0
        resp = 1j * theta * s2 * (
            np.exp(-1j * system.omega0 * tau) - np.exp(-1j * system.omega1 * tau)
        )
        kubo = 1j * theta * kubo_commutator(system, cfg["n_max"], tau)
        diff = abs(resp - kubo)
        worst = max(worst, diff)
        lines.append(
            f"{_fmt(tau)},{_fmt(resp.real)},{_fmt(resp.imag)},"
            f"{_fmt(kubo.real)},{_fmt(kubo.imag)},{_fmt(diff)}"
        )
    return (0 if worst <= tol else 1), "\n".join(lines) + "\n"


def cmd_born(cfg, args):
    system = _system(cfg)
    drive = _drive(cfg)
    step = cfg["ode_step"]
    terms = born_series(system, drive, BORN_ORDER, step)
    exact = born_exact_amplitude(system, drive, step)
    lines = ["order,re_term,im_term,re_partial,im_partial,abs_residual_vs_exact"]
    partial = 0j
    for k, term in enumerate(terms):
        partial += term
        lines.append(
            f"{k},{_fmt(term.real)},{_fmt(term.imag)},"
            f"{_fmt(partial.real)},{_fmt(partial.imag)},{_fmt(abs(exact - partial))}"
        )
    return 0, "\n".join(lines) + "\n"


def cmd_count(cfg, args):
    diagrams = _parse_diagrams(cfg["diagrams"]) or list(CANONICAL_DIAGRAMS)
    lines = ["name,loops,fermion_internal,photon_internal,minimal_N,D0,D1,D2,D3,D4,D5"]
    code = 0
    for diag in diagrams:
        degrees = ",".join(str(superficial_degree(diag, n)) for n in range(6))
        try:
            minimal = minimal_regulators(diag)
        except NoFermionLines as exc:
            lines.append(f"{diag.name},{diag.loops},{diag.fermion_internal},"
                         f"{diag.photon_internal},error,{degrees}")
            lines.append(f"# {exc}")
            code = 2
            continue
        lines.append(
            f"{diag.name},{diag.loops},{diag.fermion_internal},"
            f"{diag.photon_internal},{minimal},{degrees}"
        )
    claims_ok = all(ok for _, _, ok in claim_table())
    lines.append(f"# canonical claims (4,2,2,1) satisfied: {claims_ok}")
    if code == 0 and not claims_ok:
        code = 1
    return code, "\n".join(lines) + "\n"


def cmd_verify(cfg, args, only=None):
    only = getattr(args, "only", None) if only is None else only
    results = verify.run_checks(only=only, tol=cfg["tol"])
    ok = all(r.passed for r in results)
    return (0 if ok else 1), verify.render_report(results)


def cmd_dirac_verify(cfg, args):
    return cmd_verify(cfg, args, only="dirac")


COMMANDS = {
    "decompose": cmd_decompose,
    "prop": cmd_prop,
    "respond": cmd_respond,
    "born": cmd_born,
    "count": cmd_count,
    "verify": cmd_verify,
    "dirac-verify": cmd_dirac_verify,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="regfilter",
        description="Divergence-free regularisation toolkit: propagator tables, "
        "response checks, power counting and the invariant suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("decompose", "partial-fraction table of a mass ladder"),
        ("prop", "time-domain propagator CSV over a tau grid"),
        ("respond", "linear response vs. commutator CSV"),
        ("born", "per-order amplitude corrections vs. exact evolution"),
        ("count", "superficial divergence power counting"),
        ("dirac-verify", "run the Dirac-sector invariant checks"),
        ("verify", "run the full invariant suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        if name == "prop":
            p.add_argument(
                "--oracle",
                action="store_true",
                help="cross-check residues against contour quadrature",
            )
        if name == "verify":
            p.add_argument(
                "--only",
                default=None,
                help="restrict checks to one module "
                "(reg_algebra, contours, oscillator, dirac, counting)",
            )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.tol is not None:
            cfg["tol"] = args.tol
        code, text = COMMANDS[args.command](cfg, args)
    except (FilterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def console_entry():
    raise SystemExit(main())
