"""
Exception hierarchy for the algebra engine.

Every error raised by the algebra layer derives from AlgebraError so the command
layer can translate failures into result dictionaries and exit codes.
"""


class AlgebraError(Exception):
    """Base class for all engine errors."""


class GeneratorCountError(AlgebraError, ValueError):
    """Operands live in free algebras with different numbers of generators."""


class RingMismatchError(AlgebraError, ValueError):
    """Commutative polynomials over different named rings were combined."""


class ExpressionSyntaxError(AlgebraError, ValueError):
    """Text could not be parsed as an expression, tame word or matrix."""

    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)


class SideConditionError(AlgebraError, ValueError):
    """Data violates the side conditions of an elementary automorphism or a relation."""


class PreconditionError(AlgebraError):
    """A pipeline precondition does not hold for the given input."""


class CertificateError(AlgebraError):
    """An internal self-check failed; the result would be unsound."""
