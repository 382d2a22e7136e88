"""
Binary vectors packed into Python integers.

Coordinate 0 is stored in the most significant bit, so comparing the
packed integers of two equal-length vectors is lexicographic comparison
of the vectors.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import LengthMismatch


@dataclass(frozen=True, order=True)
class BinaryVector:
    """
    A vector in {0,1}^length.

    Attributes:
    -----------
    length : int
    bits : int
        Packed coordinates; coordinate ``i`` is bit ``length - 1 - i``.
    """

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in {self.length} coordinates")

    @classmethod
    def zeros(cls, length: int) -> "BinaryVector":
        return cls(length, 0)

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BinaryVector":
        bits, length = 0, 0
        for value in values:
            if value not in (0, 1):
                raise ValueError(f"Not a binary coordinate: {value!r}")
            bits = (bits << 1) | int(value)
            length += 1
        return cls(length, bits)

    @classmethod
    def from_indices(cls, length: int, ones: Iterable[int]) -> "BinaryVector":
        bits = 0
        for i in ones:
            if not 0 <= i < length:
                raise IndexError(i)
            bits |= 1 << (length - 1 - i)
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (self.length - 1 - i)) & 1

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return iter(self.to_list())

    def to_list(self) -> List[int]:
        return [(self.bits >> (self.length - 1 - i)) & 1 for i in range(self.length)]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.uint8)

    def to_fractions(self) -> List[Fraction]:
        return [Fraction(x) for x in self.to_list()]

    def flip(self, i: int) -> "BinaryVector":
        if not 0 <= i < self.length:
            raise IndexError(i)
        return BinaryVector(self.length, self.bits ^ (1 << (self.length - 1 - i)))

    def split(self) -> Tuple["BinaryVector", "BinaryVector"]:
        """Inverse of :func:`concat` for an even-length vector."""
        if self.length % 2:
            raise LengthMismatch("Only even-length vectors split into halves")
        half = self.length // 2
        return (BinaryVector(half, self.bits >> half),
                BinaryVector(half, self.bits & ((1 << half) - 1)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.to_list()) + ")"


def concat(u: BinaryVector, v: BinaryVector) -> BinaryVector:
    """
    u ⊕ v.

    Raises:
    -------
    LengthMismatch
        If the factors have different lengths.
    """
    if u.length != v.length:
        raise LengthMismatch(f"Cannot concatenate lengths {u.length} and {v.length}")
    return BinaryVector(u.length + v.length, (u.bits << v.length) | v.bits)


def linear_scan_contains(region: Sequence[BinaryVector], v: BinaryVector) -> bool:
    """
    Membership by comparing coordinates one by one against every member,
    O(m·|region|). Used when measuring against the pessimistic cost model.
    """
    for w in region:
        if w.length != v.length:
            continue
        if all(w[i] == v[i] for i in range(v.length)):
            return True
    return False
