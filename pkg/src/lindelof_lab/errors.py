"""Exception hierarchy for lindelof-lab."""


class LindelofLabError(Exception):
    """Base class for every error raised by the library."""


class PoleError(LindelofLabError):
    """The argument sits on (or within tolerance of) a pole."""


class DomainError(LindelofLabError, ValueError):
    """The argument is outside the mathematical domain of the operation."""


class RangeError(LindelofLabError, ValueError):
    """The argument is valid mathematically but outside the supported range."""


class NumericOverflowError(LindelofLabError, OverflowError):
    """The result does not fit in double precision."""


class IndeterminateError(LindelofLabError):
    """A removable singularity was hit and limits were disabled."""


class ContourError(DomainError):
    """The line of integration violates the representation's strip."""


class ConvergenceError(LindelofLabError):
    """An iterative or averaged estimate failed to settle."""


class FitError(LindelofLabError):
    """Too little usable data for a regression."""


class QuadratureError(LindelofLabError):
    """Step-halving disagreement above the accepted threshold."""


class CharacterError(DomainError):
    """A Dirichlet character table violates its invariants."""
