"""Exception and warning types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where an operation is defined."""


class ResolutionError(ValueError):
    """A Chebyshev expansion is not resolved at the requested truncation.

    Attributes
    ----------
    tail_mass : float
        Fraction of the coefficient l1 mass carried by the last 10% of the
        coefficients.
    """

    def __init__(self, message, tail_mass):
        super().__init__(message)
        self.tail_mass = tail_mass


class UnderResolvedWarning(UserWarning):
    """Emitted by the tail diagnostic when the expansion looks truncated."""


class MeanValueError(ValueError):
    """The zero-mean hypothesis of the weighted Parseval identity fails.

    The offending record is attached as ``result`` so callers can still read
    both sides and the corrected identity.
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class OracleError(ArithmeticError):
    """The principal-value quadrature oracle cannot be evaluated."""


class DegenerateWeightError(ValueError):
    """A weight is supported on too few points for the requested family."""


class ConvergenceError(ArithmeticError):
    """An iterative root or eigenvalue solver did not converge."""


class InstabilityError(ArithmeticError):
    """The transport integrator lost mass faster than the flow allows."""
