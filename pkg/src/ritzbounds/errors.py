"""Exception hierarchy shared by all modules."""


class RitzBoundsError(Exception):
    """Base class for every error raised by the package."""


class InputDomainError(RitzBoundsError, ValueError):
    """Input contains values outside the domain of the operation (NaN, inf)."""


class ContractError(RitzBoundsError, ValueError):
    """A precondition of the operation is not met (shapes, orthonormality...)."""


class RankError(ContractError):
    """Input matrix does not have full column rank."""

    def __init__(self, message, smallest_singular_value):
        super().__init__(message)
        self.smallest_singular_value = smallest_singular_value


class CapacityError(ContractError):
    """Too many nonzero target angles for the available complement."""


class NumericalFailureError(RitzBoundsError, ArithmeticError):
    """An iterative kernel failed to converge."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class ReproductionError(RitzBoundsError, AssertionError):
    """A hard-coded reproduction did not match its expected values."""


class MatrixFormatError(RitzBoundsError, ValueError):
    """Malformed matrix text file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
