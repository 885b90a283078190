"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LeibnizError(Exception):
    """Base class for all library errors."""


class DivisionByZero(LeibnizError, ZeroDivisionError):
    pass


class ZeroInput(LeibnizError, ValueError):
    pass


class NormBoundExceeded(LeibnizError, ValueError):
    pass


class NotDivisible(LeibnizError, ArithmeticError):
    pass


class DivisionByZeroPoly(DivisionByZero):
    pass


class ZeroPolynomial(LeibnizError, ValueError):
    pass


class IncompleteFactorization(LeibnizError, ValueError):
    pass


class UnsupportedCoefficients(LeibnizError, ValueError):
    pass


class UnsupportedScalar(LeibnizError, ValueError):
    pass


class UnsupportedOperation(LeibnizError, TypeError):
    pass


class NotADerivation(LeibnizError, ValueError):
    pass


class DomainGap(LeibnizError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class PoolGap(DomainGap):
    pass


class NotMonomialForm(LeibnizError, ValueError):
    pass


class _Positioned(LeibnizError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

    def __str__(self) -> str:
        if self.position is None:
            return str(self.args[0])
        return f"{self.args[0]} at position {self.position}"


class DegreeCapExceeded(_Positioned):
    pass


class NegativeExponent(_Positioned):
    pass


class ExpressionSyntaxError(LeibnizError, ValueError):
    """Malformed polynomial or scalar text.

    Carries the character offset of the offending token and the set of
    tokens the parser would have accepted there.
    """

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.position = position
        self.expected = tuple(expected)

    def __str__(self) -> str:
        msg = f"{self.args[0]} at position {self.position}"
        if self.expected:
            msg += f" (expected one of: {', '.join(self.expected)})"
        return msg


class SpecError(LeibnizError, ValueError):
    """Invalid operator or map specification document."""
