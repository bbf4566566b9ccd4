"""Exception hierarchy shared by all modules."""


class SymmSpaceError(Exception):
    """Base class for domain failures raised by this package."""


class ShapeError(SymmSpaceError, ValueError):
    """Matrix has the wrong shape for the requested operation."""


class NonFiniteError(SymmSpaceError, ValueError):
    """Matrix contains NaN or Inf entries."""


class SingularMatrixError(SymmSpaceError, ValueError):
    """Matrix is numerically singular."""


class NoLogarithm(SymmSpaceError):
    """No logarithm exists on the requested branch.

    ``eigenvalue`` is the offending eigenvalue, when there is one.
    """

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NoSquareRoot(SymmSpaceError):
    """Neither logarithm policy produced a square root."""


class ValidationFailure(SymmSpaceError):
    """A (group, involution) pairing fails the symmetric-triple invariants."""


class PreconditionError(SymmSpaceError, ValueError):
    """An operation was called with inputs violating its precondition."""


class DecomposeFailure(SymmSpaceError):
    """The factorization g = p k could not be certified.

    ``spectrum`` holds the eigenvalues of g sigma(g)^-1 that blocked the
    square root.
    """

    def __init__(self, message, spectrum=None):
        super().__init__(message)
        self.spectrum = spectrum


class UnsupportedKDimension(SymmSpaceError):
    """Coset sampling is implemented only for dim k <= 2."""
