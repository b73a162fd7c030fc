"""Superficial-divergence power counting for one-loop QED topologies.

Each of the N regulator rungs steepens the fermion propagator falloff by
one power, so a diagram with L loops, F_i internal fermion lines and B_i
internal photon lines (photons stay unregularised) has superficial degree

    D = 4 L - (1 + N) F_i - 2 B_i,

negative meaning superficially convergent.  The four canonical sub-diagrams
need N = (4, 2, 2, 1) regulators: two suffice for everything physically
relevant, four guarantee convergence of all diagrams including the tadpole.
"""

import warnings
from dataclasses import dataclass

from .errors import NoFermionLines


@dataclass(frozen=True)
class DiagramSpec:
    """Loop and internal line counts of a diagram."""

    name: str
    loops: int
    fermion_internal: int
    photon_internal: int

    def __post_init__(self):
        if self.loops < 1:
            raise ValueError("need at least one loop")
        if self.fermion_internal < 0 or self.photon_internal < 0:
            raise ValueError("line counts must be non-negative")
        if self.photon_internal > self.fermion_internal:
            # In any loop the photon lines cannot outnumber the fermion
            # ones; counts violating this are suspicious but not rejected.
            warnings.warn(
                f"{self.name}: photon lines ({self.photon_internal}) exceed "
                f"fermion lines ({self.fermion_internal})",
                stacklevel=2,
            )


def superficial_degree(diagram, n_reg):
    """D = 4L - (1 + n_reg) F_i - 2 B_i; negative means convergent."""
    if n_reg < 0:
        raise ValueError("regulator count must be non-negative")
    return (
        4 * diagram.loops
        - (1 + n_reg) * diagram.fermion_internal
        - 2 * diagram.photon_internal
    )


def minimal_regulators(diagram):
    """Smallest N with superficial_degree(diagram, N) < 0."""
    if diagram.fermion_internal < 1:
        raise NoFermionLines(
            f"{diagram.name}: regulators act on fermion propagators only"
        )
    n = 0
    while superficial_degree(diagram, n) >= 0:
        n += 1
    return n


TADPOLE = DiagramSpec("tadpole", loops=1, fermion_internal=1, photon_internal=0)
SELF_MASS = DiagramSpec("self-mass", loops=1, fermion_internal=1, photon_internal=1)
VACUUM_POLARISATION = DiagramSpec(
    "vacuum-polarisation", loops=1, fermion_internal=2, photon_internal=0
)
VERTEX = DiagramSpec("vertex", loops=1, fermion_internal=2, photon_internal=1)

CANONICAL_DIAGRAMS = (TADPOLE, SELF_MASS, VACUUM_POLARISATION, VERTEX)
EXPECTED_MINIMAL = {
    "tadpole": 4,
    "self-mass": 2,
    "vacuum-polarisation": 2,
    "vertex": 1,
}


def claim_table():
    """(diagram, minimal N, matches the expected value) for the four
    canonical sub-diagrams."""
    rows = []
    for diag in CANONICAL_DIAGRAMS:
        n = minimal_regulators(diag)
        rows.append((diag, n, n == EXPECTED_MINIMAL[diag.name]))
    return rows
