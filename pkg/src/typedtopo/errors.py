"""Exception types raised across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CurveEvaluationError(ArithmeticError):
    """An implicit curve evaluator returned a non-finite value."""

    def __init__(self, x: float, y: float, value: float):
        super().__init__(f"curve evaluator returned {value!r} at ({x!r}, {y!r})")
        self.x = x
        self.y = y
        self.value = value


class TransformUndefined(ValueError):
    """A grid transform has no valid image for some cell."""

    def __init__(self, message: str, cell=None):
        super().__init__(message)
        self.cell = cell


class TranslationUndefined(TransformUndefined):
    pass


class ScaleUndefined(TransformUndefined):
    pass


class TypeIIViolation(ValueError):
    """Component adjacency breaks the shared-child rule of a type-II pseudotree."""


class DatasetParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
