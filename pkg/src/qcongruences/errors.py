"""Exception types raised by qcongruences."""


class QCongruenceError(Exception):
    """Base class for all library errors."""


class SpecError(QCongruenceError, ValueError):
    """Invalid argument, series description or parameter set."""


class ModulusMismatchError(QCongruenceError, ValueError):
    """Binary operation between series with different modulus settings."""


class NotInvertibleError(QCongruenceError, ZeroDivisionError):
    """Constant term is not a unit of the coefficient ring."""


class NotApplicableError(QCongruenceError, ValueError):
    """Theorem parameters violate an applicability predicate."""


class TruncationCeilingError(QCongruenceError):
    """A computation needs more coefficients than the configured ceiling."""

    def __init__(self, required: int, ceiling: int):
        super().__init__(f"needs truncation {required}, ceiling is {ceiling}")
        self.required = required
        self.ceiling = ceiling
