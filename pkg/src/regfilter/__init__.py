"""regfilter: a divergence-free regularisation toolkit.

Rational-function mass-ladder algebra, contour-selected time-domain
propagators with an independent quadrature oracle, the exactly solvable
two-mode oscillator filter (dual operator sets, indefinite-metric
pseudo-adjoint, Kubo response, Born series, sector S-matrix), momentum-space
Dirac-matrix identities of the regularised fermion propagator, and
superficial-divergence power counting for one-loop QED topologies.
"""

from ._backend import BACKEND
from .contours import (
    Contour,
    jump_at_zero,
    numeric_contour_oracle,
    smoothness_order,
    time_domain_propagator,
)
from .counting import (
    CANONICAL_DIAGRAMS,
    DiagramSpec,
    claim_table,
    minimal_regulators,
    superficial_degree,
)
from .dirac import (
    FourMomentum,
    GammaSet,
    contraction_time_domain,
    equal_time_anticommutator,
    g_f_matrix,
    inverse_filter_polynomial,
    matrix_recursion_residual,
    slash,
)
from .errors import (
    ConfigError,
    DegenerateLadder,
    DimensionMismatch,
    FilterError,
    IndexOrder,
    IndexOutOfRange,
    NoFermionLines,
    NonScalarCommutator,
    OracleMismatch,
    PoleProximity,
    QuadratureFailure,
    StepTooLarge,
    TauZeroUndefined,
)
from .fock import (
    FockBasis,
    build_dual_operators,
    build_fock_operators,
    hamiltonian_matrix,
    pseudo_adjoint,
    sign_operator,
)
from .ladder import (
    MassLadder,
    PartialFractionDecomposition,
    decompose,
    g_f_scalar,
    recursion_residual,
    sum_rule_residuals,
)
from .oscillator import (
    DriveSignal,
    FilterSystem,
    born_series,
    evolve_transfer,
    kubo_commutator,
    response_function,
    sector_s_matrix,
    sector_sign_operator,
    vacuum_tadpole,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CANONICAL_DIAGRAMS",
    "ConfigError",
    "Contour",
    "DegenerateLadder",
    "DiagramSpec",
    "DimensionMismatch",
    "DriveSignal",
    "FilterError",
    "FilterSystem",
    "FockBasis",
    "FourMomentum",
    "GammaSet",
    "IndexOrder",
    "IndexOutOfRange",
    "MassLadder",
    "NoFermionLines",
    "NonScalarCommutator",
    "OracleMismatch",
    "PartialFractionDecomposition",
    "PoleProximity",
    "QuadratureFailure",
    "StepTooLarge",
    "TauZeroUndefined",
    "born_series",
    "build_dual_operators",
    "build_fock_operators",
    "claim_table",
    "contraction_time_domain",
    "decompose",
    "equal_time_anticommutator",
    "evolve_transfer",
    "g_f_matrix",
    "g_f_scalar",
    "hamiltonian_matrix",
    "inverse_filter_polynomial",
    "jump_at_zero",
    "kubo_commutator",
    "matrix_recursion_residual",
    "minimal_regulators",
    "numeric_contour_oracle",
    "pseudo_adjoint",
    "recursion_residual",
    "response_function",
    "sector_s_matrix",
    "sector_sign_operator",
    "sign_operator",
    "slash",
    "smoothness_order",
    "sum_rule_residuals",
    "superficial_degree",
    "time_domain_propagator",
    "vacuum_tadpole",
]
