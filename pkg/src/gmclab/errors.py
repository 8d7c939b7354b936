"""Exception hierarchy.

Validation problems derive from ``ValueError`` (CLI exit code 1), numerical
failures from ``ArithmeticError`` (CLI exit code 2).
"""


class DomainError(ValueError):
    """Argument outside the domain of the function."""


class PoleError(DomainError):
    """Argument on (or within tolerance of) a pole or zero."""


class StripError(DomainError):
    """Mellin argument outside its strip of analyticity.

    ``bound`` names the violated inequality.
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class OrderTooLargeError(DomainError):
    """Requested order exceeds a tabulation cap."""


class NumericalError(ArithmeticError):
    """Base class for numerical failures."""


class ConvergenceError(NumericalError):
    """Quadrature / series did not reach tolerance; ``estimate`` holds the
    achieved error estimate."""

    def __init__(self, message, estimate=None, value=None):
        super().__init__(message)
        self.estimate = estimate
        self.value = value


class TailBoundError(NumericalError):
    """Truncated-product tail estimate exceeds the requested tolerance."""


class InversionGridError(NumericalError):
    """Characteristic function not decayed enough for Gil-Pelaez inversion."""
