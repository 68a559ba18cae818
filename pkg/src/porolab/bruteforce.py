"""Structure-blind exhaustive cylinder checks, used to validate the oracles.

This module knows nothing about how a family is described: it only sees a
prefix rejector and walks the binary tree. It is the independent second
route against which every structured oracle is compared at small depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bitseq import BitWord
from .budgets import DEFAULT_LEAF_BUDGET, resolve_budget
from .errors import BudgetExceeded


@dataclass(frozen=True)
class PrefixRejector:
    """Prefix test meaning "no member of the family extends this word"."""

    reject: Callable[[BitWord], bool]

    @classmethod
    def from_oracle(cls, oracle) -> "PrefixRejector":
        return cls(oracle.is_empty)


def bf_empty_to_depth(
    rej: PrefixRejector,
    s: BitWord,
    depth: int,
    *,
    budget: int | None = None,
    prune: bool = True,
) -> bool:
    """True iff every extension of s to the given depth dies under the rejector.

    With prune=True (the default) a rejected prefix closes its whole subtree,
    which is sound for monotone rejectors; with prune=False the rejector is
    consulted at the leaves only, so pruning itself can be audited against
    full enumeration. The budget counts depth-level visits.
    """
    if depth < s.length:
        raise ValueError(f"depth {depth} below word length {s.length}")
    budget = resolve_budget(budget, DEFAULT_LEAF_BUDGET)
    leaves = 0

    if not prune:
        tail = depth - s.length
        for code in range(1 << tail):
            leaves += 1
            if leaves > budget:
                raise BudgetExceeded(f"exceeded {budget} leaf visits")
            if not rej.reject(BitWord(s.bits | (code << s.length), depth)):
                return False
        return True

    stack = [s]
    while stack:
        w = stack.pop()
        if w.length == depth:
            leaves += 1
            if leaves > budget:
                raise BudgetExceeded(f"exceeded {budget} leaf visits")
        if rej.reject(w):
            continue
        if w.length == depth:
            return False
        # push the one-child first so the all-zeros path is explored first
        stack.append(w.append(1))
        stack.append(w.append(0))
    return True
