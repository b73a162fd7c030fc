"""Exception types raised by the regfilter package."""


class FilterError(Exception):
    """Base class for all regfilter errors."""


class DegenerateLadder(FilterError, ValueError):
    """Two ladder masses are too close for the residue formulas to be stable."""


class PoleProximity(FilterError, ValueError):
    """Evaluation point is within the guard distance of a pole."""


class IndexOrder(FilterError, ValueError):
    """Operation requires strictly ordered ladder indices (K < L)."""


class IndexOutOfRange(FilterError, IndexError):
    """Ladder index outside 0..N."""


class QuadratureFailure(FilterError, ArithmeticError):
    """Adaptive quadrature did not reach the requested precision."""


class DimensionMismatch(FilterError, ValueError):
    """Operator matrices have incompatible shapes."""


class NonScalarCommutator(FilterError, ArithmeticError):
    """A commutator expected to be a multiple of identity is not."""


class OracleMismatch(FilterError, ArithmeticError):
    """Two independent evaluation routes disagree beyond tolerance."""


class StepTooLarge(FilterError, ValueError):
    """ODE step too coarse for the drive signal."""


class TauZeroUndefined(FilterError, ValueError):
    """Unregularised Feynman value requested exactly at the jump point."""


class NoFermionLines(FilterError, ValueError):
    """Regulators act on fermion lines only; diagram has none."""


class ConfigError(FilterError, ValueError):
    """Malformed CLI configuration."""
