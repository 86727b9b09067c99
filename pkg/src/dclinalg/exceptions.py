"""Exception and warning types raised by dclinalg."""


class DualAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class ConstructionError(DualAlgebraError, ValueError):
    """A scalar or array was built from non-finite or malformed data."""


class DomainError(DualAlgebraError, ValueError):
    """An elementary function was evaluated outside its domain."""


class NotAppreciable(DualAlgebraError, ZeroDivisionError):
    """Inversion of an infinitesimal (zero standard part) quantity."""


class ShapeError(DualAlgebraError, ValueError):
    """Operands have incompatible shapes."""


class ZeroVector(DualAlgebraError, ValueError):
    pass


class NotHermitian(DualAlgebraError, ValueError):
    pass


class NotPartiallyUnitary(DualAlgebraError, ValueError):
    pass


class ConvergenceError(DualAlgebraError, RuntimeError):
    """An iterative classical kernel did not converge within its sweep budget."""


class ParseError(DualAlgebraError, ValueError):
    """A serialized matrix or image could not be decoded."""


class DimensionMismatch(DualAlgebraError, ValueError):
    pass


class ClusterGapTooSmall(UserWarning):
    """Two distinct standard eigenvalues are closer than ten cluster tolerances.

    The infinitesimal eigenvector correction divides by the gap, so accuracy
    degrades as the gap shrinks. Computation still proceeds.
    """
