"""Finite-window deciders and statistics for families of sets of naturals.

Every decider here is a statement about an explicit window [0, d); nothing
in this module claims membership of an infinite set in any family. Each
statistic comes with its interpretation rule, e.g. a set is "p-syndetic on
the window" iff :func:`max_gap` returns at most p.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .bitseq import BitWord
from .errors import UnknownPreset, WindowExceedsHorizon


@dataclass(frozen=True)
class FiniteSet:
    """Strictly increasing naturals below an explicit horizon."""

    elements: tuple[int, ...]
    horizon: int

    def __post_init__(self) -> None:
        if self.horizon < 0:
            raise ValueError("horizon must be non-negative")
        prev = -1
        for e in self.elements:
            if e <= prev:
                raise ValueError("elements must be strictly increasing naturals")
            prev = e
        if prev >= self.horizon:
            raise ValueError(f"element {prev} lies at or beyond horizon {self.horizon}")

    @classmethod
    def of(cls, elements: Iterable[int], horizon: int | None = None) -> "FiniteSet":
        elems = tuple(sorted(set(elements)))
        if horizon is None:
            horizon = elems[-1] + 1 if elems else 0
        return cls(elems, horizon)

    @classmethod
    def from_word(cls, word: BitWord) -> "FiniteSet":
        """One-positions of a word, with the word length as horizon."""
        return cls(word.ones(), word.length)

    def __contains__(self, k: int) -> bool:
        i = bisect_left(self.elements, k)
        return i < len(self.elements) and self.elements[i] == k

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def contains_ap(A: FiniteSet, n: int) -> tuple[int, int] | None:
    """First (start, step) whose n-term arithmetic progression lies inside A.

    Deterministic search order: starts ascending over members, then steps
    ascending, step >= 1. A single member counts as a length-1 progression.
    Returns None when no progression of length n exists.
    """
    if n < 1:
        raise ValueError("progression length must be at least 1")
    if not A.elements:
        return None
    if n == 1:
        return (A.elements[0], 1)
    members = frozenset(A.elements)
    top = A.elements[-1]
    for a in A.elements:
        for r in range(1, (top - a) // (n - 1) + 1):
            if all(a + i * r in members for i in range(1, n)):
                return (a, r)
    return None


def max_interval_len(A: FiniteSet) -> int:
    """Length of the longest run of consecutive members."""
    best = run = 0
    prev = None
    for e in A.elements:
        run = run + 1 if prev == e - 1 else 1
        best = max(best, run)
        prev = e
    return best


def max_gap(A: FiniteSet) -> int:
    """Length of the longest run of positions in [0, horizon) missing from A."""
    best = 0
    prev = -1
    for e in A.elements:
        best = max(best, e - prev - 1)
        prev = e
    return max(best, A.horizon - prev - 1)


def ps_block_witness(A: FiniteSet, p: int, L: int) -> tuple[int, int] | None:
    """First block [lo, hi) of length >= L, anchored in A at both ends, whose
    internal absent runs are all of length <= p; None if no block qualifies.

    Anchoring at members keeps stray space around the set from inflating a
    block. The scan walks maximal p-bounded chains left to right and cuts
    the earliest chain at the first anchor that reaches length L.
    """
    if L < 1:
        raise ValueError("block length must be at least 1")
    if p < 0:
        raise ValueError("gap bound must be non-negative")
    elems = A.elements
    i = 0
    while i < len(elems):
        j = i
        while j + 1 < len(elems) and elems[j + 1] - elems[j] - 1 <= p:
            j += 1
        lo = elems[i]
        for k in range(i, j + 1):
            if elems[k] + 1 - lo >= L:
                return (lo, elems[k] + 1)
        i = j + 1
    return None


@dataclass(frozen=True)
class DensityStats:
    """Peak member count over windows of n+1 consecutive naturals."""

    n: int
    max_count: int
    ratio: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.max_count <= self.n + 1:
            raise ValueError("count must lie in [0, n+1]")


def window_density(A: FiniteSet, n: int) -> DensityStats:
    """Sliding peak of |A ∩ {m, ..., m+n}| over all windows inside the horizon.

    The window holds n+1 points while the reported ratio divides by n, so the
    ratio may exceed 1 at small n; it is reported as-is, no correction.
    """
    if n < 1:
        raise ValueError("window parameter must be at least 1")
    if n + 1 > A.horizon:
        raise WindowExceedsHorizon(f"window of {n + 1} points exceeds horizon {A.horizon}")
    marks = bytearray(A.horizon)
    for e in A.elements:
        marks[e] = 1
    count = sum(marks[: n + 1])
    best = count
    for m in range(1, A.horizon - n):
        count += marks[m + n] - marks[m - 1]
        if count > best:
            best = count
    return DensityStats(n=n, max_count=best, ratio=Fraction(best, n))


@dataclass(frozen=True)
class WeightSeq:
    """Positive rational weights indexed by naturals, compared by name."""

    name: str
    _fn: Callable[[int], Fraction] = field(compare=False, repr=False)

    def weight(self, i: int) -> Fraction:
        v = Fraction(self._fn(i))
        if v <= 0:
            raise ValueError(f"weight at index {i} is not positive: {v}")
        return v


def partial_weight_sum(w: WeightSeq, A: FiniteSet) -> Fraction:
    """Exact rational sum of the weights over the members of A."""
    return sum((w.weight(i) for i in A.elements), Fraction(0))


def harmonic_weights() -> WeightSeq:
    """Weights 1/(i+1)."""
    return WeightSeq("harmonic", lambda i: Fraction(1, i + 1))


def log_weights() -> WeightSeq:
    """Weights 1/((i+2) * ceil(log2(i+2))).

    The integer ceil(log2 x) is at least ln x for x >= 2, so each weight is
    an exact rational lower bound of the reciprocal x*ln(x) profile; sums
    stay exact and only ever underestimate.
    """
    return WeightSeq("log", lambda i: Fraction(1, (i + 2) * (i + 1).bit_length()))


def constant_weights(value: int = 1) -> WeightSeq:
    """Constant weights; never tends to zero, handy as a negative fixture."""
    return WeightSeq("constant", lambda i: Fraction(value))


_WEIGHT_PRESETS: dict[str, Callable[[], WeightSeq]] = {
    "harmonic": harmonic_weights,
    "log": log_weights,
    "constant": constant_weights,
}


def weight_preset(name: str) -> WeightSeq:
    try:
        return _WEIGHT_PRESETS[name]()
    except KeyError:
        raise UnknownPreset(f"unknown weight preset {name!r}") from None


def weight_preset_names() -> list[str]:
    return sorted(_WEIGHT_PRESETS)
