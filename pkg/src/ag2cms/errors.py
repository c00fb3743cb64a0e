"""Exceptions shared across the exact-arithmetic and operator layers."""


class SemanticsError(ValueError):
    """Raised when values with different variable semantics are mixed."""


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


class DomainError(ValueError):
    """Raised for evaluation points outside the domain (e.g. z_i = 0 for Laurent data)."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""
