from __future__ import annotations

from typing import Any, Optional


class InputParseError(ValueError):
    """Malformed input document, term, braid text or character syntax."""


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class VariableMismatchError(PreconditionError):
    pass


class DimensionMismatchError(PreconditionError):
    pass


class ZeroPolynomialError(PreconditionError):
    pass


class MixedSignError(PreconditionError):
    def __init__(self, message: str, position: Optional[tuple] = None):
        super().__init__(message)
        self.position = position


class NotPrimitiveError(PreconditionError):
    pass


class SpreadNeverUniformError(PreconditionError):
    pass


class NotDivisibleError(PreconditionError):
    def __init__(self, message: str, remainder: Any = None):
        super().__init__(message)
        self.remainder = remainder


class NotPureBraidError(PreconditionError):
    def __init__(self, message: str, permutation: Optional[tuple] = None):
        super().__init__(message)
        self.permutation = permutation


class DegenerateDirectionError(PreconditionError):
    pass


class NumericCheckError(RuntimeError):
    """A numeric cross-check or convergence requirement failed."""


class RootFindingError(NumericCheckError):
    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class ToleranceError(NumericCheckError):
    def __init__(self, message: str, expected: float, observed: float):
        super().__init__(message)
        self.expected = expected
        self.observed = observed


class EvaluationRangeError(NumericCheckError):
    """Evaluation on the positive-real locus left the floating point range."""


class IntegralityError(RuntimeError):
    """Exact arithmetic produced a non-integral coefficient; always a bug."""


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERIC = 4


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, InputParseError):
        return EXIT_PARSE
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    if isinstance(exc, (NumericCheckError, IntegralityError)):
        return EXIT_NUMERIC
    return EXIT_USAGE
