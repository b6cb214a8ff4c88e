"""Exception types shared across the package."""

from __future__ import annotations


class ScalarParseError(ValueError):
    """Raised when a scalar or polynomial string cannot be parsed."""

    def __init__(self, message: str, text: str, column: int, line: int = 1):
        self.text = text
        self.column = column
        self.line = line
        super().__init__(f"{message} (line {line}, column {column}): {text!r}")


class SingularMatrixError(ArithmeticError):
    pass


class ShapeMismatchError(ValueError):
    pass


class FuelExhaustedError(RuntimeError):
    """A normal-form computation exceeded its step budget.

    With order-decreasing rules this can only mean the reduction system is
    malformed, so it is never swallowed.
    """


class PreconditionFailedError(ValueError):
    """An input violates a stated hypothesis; ``condition`` names it."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class NotConfluentError(RuntimeError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class UndeterminedError(ValueError):
    """A fusion product that the available rules do not determine."""


class ConditionFailedError(ValueError):
    """A matrix pair fails the condition B^t A^t B A = lambda * I."""
