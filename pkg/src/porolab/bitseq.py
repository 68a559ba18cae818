"""Finite binary words, cylinder arithmetic, and dyadic-radius handling.

Words are the common currency of the toolkit: prefixes, cylinder stems,
holes, and construction stages are all ``BitWord`` values. Bits are packed
into a single int, so words up to length 2**16 and beyond stay cheap to
copy, hash, and index. Values are immutable and safe to share between
concurrent workers.

Radii are exact rationals throughout; no floating point enters any
distance comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import PrefixTooShort

#: Returned by :func:`rho_exponent` when the compared ranges never differ.
INFINITE = math.inf


@dataclass(frozen=True)
class BitWord:
    """Immutable word over {0,1}; bit i of ``bits`` stores position i."""

    bits: int = 0
    length: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit in the declared length")

    @classmethod
    def from_str(cls, text: str) -> "BitWord":
        """Parse a string over {0,1}; any other character is rejected."""
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid bit character {ch!r}")
        return cls(bits, len(text))

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitWord":
        bits = 0
        length = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError(f"invalid bit value {v!r}")
            bits |= v << length
            length += 1
        return cls(bits, length)

    @classmethod
    def zeros(cls, length: int) -> "BitWord":
        return cls(0, length)

    @classmethod
    def constant(cls, bit: int, length: int) -> "BitWord":
        """The constant word bit^length."""
        if bit == 0:
            return cls(0, length)
        if bit == 1:
            return cls((1 << length) - 1, length)
        raise ValueError(f"invalid bit value {bit!r}")

    @classmethod
    def from_ones(cls, positions: Iterable[int], length: int) -> "BitWord":
        """Word of the given length with ones exactly at the given positions."""
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"position {p} outside [0, {length})")
            bits |= 1 << p
        return cls(bits, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"position {i} outside word of length {self.length}")
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitWord({str(self)!r})"

    def restrict(self, j: int) -> "BitWord":
        """Prefix of length j (j must not exceed the length)."""
        if not 0 <= j <= self.length:
            raise ValueError(f"cannot restrict word of length {self.length} to {j}")
        return BitWord(self.bits & ((1 << j) - 1), j)

    def concat(self, other: "BitWord") -> "BitWord":
        return BitWord(self.bits | (other.bits << self.length), self.length + other.length)

    def __add__(self, other: "BitWord") -> "BitWord":
        return self.concat(other)

    def append(self, bit: int) -> "BitWord":
        if bit not in (0, 1):
            raise ValueError(f"invalid bit value {bit!r}")
        return BitWord(self.bits | (bit << self.length), self.length + 1)

    def suffix_from(self, j: int) -> "BitWord":
        """The word with its first j positions dropped."""
        if not 0 <= j <= self.length:
            raise ValueError(f"cannot drop {j} positions from word of length {self.length}")
        return BitWord(self.bits >> j, self.length - j)

    def extends(self, prefix: "BitWord") -> bool:
        """True iff ``prefix`` is an initial segment of this word."""
        return self.length >= prefix.length and (
            self.bits & ((1 << prefix.length) - 1)
        ) == prefix.bits

    def ones(self) -> tuple[int, ...]:
        """Positions carrying a one, in increasing order."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def count_ones(self) -> int:
        return self.bits.bit_count()

    def with_ones(self, positions: Iterable[int]) -> "BitWord":
        """Copy with the given positions forced to one."""
        bits = self.bits
        for p in positions:
            if not 0 <= p < self.length:
                raise ValueError(f"position {p} outside word of length {self.length}")
            bits |= 1 << p
        return BitWord(bits, self.length)

    def xor(self, other: "BitWord") -> "BitWord":
        """Positionwise sum modulo 2; lengths must match."""
        if other.length != self.length:
            raise ValueError("xor requires words of equal length")
        return BitWord(self.bits ^ other.bits, self.length)


def rho_exponent(s: BitWord, t: BitWord) -> int | float:
    """Index of the first disagreement over the common range, INFINITE if none.

    The distance between the words is 2**-result. Words of unequal length are
    compared only up to the shorter one; callers that want a tail convention
    (say, an all-zeros tail) must materialize it to the working depth first.
    """
    common = min(s.length, t.length)
    diff = (s.bits ^ t.bits) & ((1 << common) - 1)
    if diff == 0:
        return INFINITE
    return (diff & -diff).bit_length() - 1


@dataclass(frozen=True)
class DyadicRadius:
    """Radius class of a radius eps in (0, 1]: 2**-exponent <= eps < 2**-(exponent-1)."""

    exponent: int

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponent must be a natural")

    @classmethod
    def from_radius(cls, eps: Fraction | int) -> "DyadicRadius":
        """Least natural N with 2**-N <= eps, computed exactly."""
        eps = Fraction(eps)
        if not 0 < eps <= 1:
            raise ValueError(f"radius must lie in (0, 1], got {eps}")
        need = -(-eps.denominator // eps.numerator)
        return cls((need - 1).bit_length())

    def radius(self) -> Fraction:
        return Fraction(1, 1 << self.exponent)


def ball_to_cylinder(x: BitWord, eps: Fraction | int) -> BitWord:
    """Stem of the cylinder realizing the ball of radius eps around x.

    At dyadic precision the two coincide: the cylinder of the first N bits of
    x, for the least N with 2**-N <= eps, carries exactly the points within
    eps of x.
    """
    n = DyadicRadius.from_radius(eps).exponent
    if x.length < n:
        raise PrefixTooShort(f"word of length {x.length} cannot anchor depth {n}")
    return x.restrict(n)


def lex_word(length: int, rank: int) -> BitWord:
    """Word of the given length at the given left-to-right lexicographic rank."""
    if not 0 <= rank < (1 << length):
        raise ValueError(f"rank {rank} outside [0, 2**{length})")
    bits = 0
    for i in range(length):
        if (rank >> (length - 1 - i)) & 1:
            bits |= 1 << i
    return BitWord(bits, length)


def lex_words(length: int) -> Iterator[BitWord]:
    """All words of the given length, in lexicographic order (0 before 1)."""
    for rank in range(1 << length):
        yield lex_word(length, rank)
