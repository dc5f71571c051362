"""Exception types shared across the package.

Every error raised by library operations carries ``op``, the dotted name of
the operation that failed, so command-line failures can name the culprit.
"""


class RadialOUError(Exception):
    """Base class; ``op`` names the failing operation."""

    def __init__(self, op, message):
        self.op = op
        super().__init__(f"[{op}] {message}")


class DomainError(RadialOUError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ValidationError(RadialOUError, ValueError):
    """Structurally invalid input (bad shapes, non-ascending levels, ...)."""


class StabilityError(RadialOUError, ValueError):
    """Time step violates an explicit-scheme stability bound."""


class NumericalError(RadialOUError, RuntimeError):
    """A numerical procedure failed to converge or lost validity."""
