"""Exception types raised by the library."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class DegenerateSystemError(ValueError):
    """A system with vanishing momentum where a nonzero one is required."""


class UndefinedAngleError(ValueError):
    """An angle that is not defined for the given (parallel) configuration."""


class UndefinedUncertaintyError(ValueError):
    """Relative uncertainty requested where the mean value vanishes."""


class InternalConsistencyError(RuntimeError):
    """A quantity that is provably positive came out non-positive."""


class RangeError(ValueError):
    """Indices outside the regime supported by brute-force quadrature."""
