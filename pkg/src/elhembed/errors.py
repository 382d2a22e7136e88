"""
Exception hierarchy for the elhembed package.

Every error raised on purpose by the library derives from ``ELHError`` and
from the builtin exception that best matches it, so callers can catch either.
"""


class ELHError(Exception):
    """Base class for all elhembed errors."""


class BottomNotSupported(ELHError, ValueError):
    """The bottom concept occurs in an input that must be bottom-free."""

    def __init__(self, where: str = "input"):
        super().__init__(f"Bottom is not supported ({where})")
        self.where = where


class ELHSyntaxError(ELHError, ValueError):
    """Malformed ``.elh`` text. Positions are 1-based."""

    def __init__(self, line: int, column: int, expected: str):
        super().__init__(f"line {line}, column {column}: expected {expected}")
        self.line = line
        self.column = column
        self.expected = expected


class ReservedNameError(ELHError, ValueError):
    """A user-supplied name uses the prefix reserved for fresh names."""


class NotNormalized(ELHError, ValueError):
    """An operation requiring a normalized ontology received another one."""


class NotNormalFormAxiom(ELHError, ValueError):
    """An axiom outside the supported normal forms was passed."""


class UnknownName(ELHError, KeyError):
    """A name is missing from an interpretation where it must be defined."""


class UnknownElement(ELHError, KeyError):
    """A domain element id outside the interpretation's domain."""


class LengthMismatch(ELHError, ValueError):
    """Vectors of different lengths were combined."""


class DimensionMismatch(ELHError, ValueError):
    """A probe vector does not live in the generators' space."""


class SignatureMismatch(ELHError, KeyError):
    """An axiom mentions names that the geometric model does not index."""


class InterpretationError(ELHError, ValueError):
    """A finite interpretation is malformed or cannot be generated."""
