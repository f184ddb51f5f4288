"""Exception taxonomy shared across the package."""


class GreensynthError(Exception):
    """Base class for all package-specific errors."""


class SingularityError(GreensynthError, ValueError):
    """An operand sits on a singular point of the evaluated function."""


class DomainOverflowError(GreensynthError, ValueError):
    """Argument outside the magnitude range the evaluator guards."""


class RuleCompatibilityError(GreensynthError, ValueError):
    """Quadrature rule paired with a contour variant it cannot integrate."""


class ConfigError(GreensynthError, ValueError):
    """Benchmark configuration text failed to parse or validate.

    ``line`` is the 1-based line number when the failure is tied to one.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericalFailure(GreensynthError, RuntimeError):
    """Internal numerical procedure failed to converge or stay finite."""
