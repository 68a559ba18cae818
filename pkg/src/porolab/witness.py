"""Stage-wise constructors for diagonal escape prefixes.

Each builder runs a finite number of stages of an inductive construction,
validates every side condition it relies on, and returns a trace that can
be replayed from its JSON form alone. Adversaries are injectable: the same
builder can be driven by a real hole finder, by a scripted fixture, or by a
fuzzer. An adversary that breaks its declared budget aborts the run with a
typed error; a side condition that merely fails is recorded as a failing
check, never papered over.

No builder concludes anything about infinite objects; it certifies exactly
the finite-stage invariants the constructions rest on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Protocol, Sequence

from .bitseq import BitWord
from .errors import (
    AdversaryBudgetViolation,
    AdversaryLeftP,
    ConfigError,
    HoleNotFound,
    NoValidCutPoints,
)
from .families import FiniteSet, WeightSeq, contains_ap
from .oracles import CylinderOracle, Support, ZeroMode, zero_constrained_empty
from .porosity import find_hole

#: Largest cut index tried before a stage gives up on its weight condition.
CUT_SEARCH_HORIZON = 1 << 16


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class StageRecord:
    stage: int
    cut_points: dict
    prefix_len: int
    checks: tuple[Check, ...] = ()


@dataclass(frozen=True)
class WitnessTrace:
    """Stage records plus the finished prefix and the run-level checks."""

    kind: str
    stages: tuple[StageRecord, ...]
    final_prefix: BitWord
    checks: tuple[Check, ...]
    summary: dict = field(default_factory=dict)

    def all_checks_pass(self) -> bool:
        return all(c.passed for c in self.checks) and all(
            c.passed for r in self.stages for c in r.checks
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "stages": [
                {
                    "stage": r.stage,
                    "cut_points": dict(r.cut_points),
                    "prefix_len": r.prefix_len,
                    "checks": [
                        {"name": c.name, "pass": c.passed, "detail": c.detail}
                        for c in r.checks
                    ],
                }
                for r in self.stages
            ],
            "final_prefix": str(self.final_prefix),
            "checks": [
                {"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks
            ],
            "summary": dict(self.summary),
        }


# --------------------------------------------------------------------------
# Escape from a script of shallow-hole covers (fixed suffix budget)

SpAdversary = Callable[[int, BitWord], BitWord]


@dataclass(frozen=True)
class HoleFinderAdversary:
    """Suffix adversary backed by hole search; stage m consults oracle m
    (cyclically) and answers with the hole's suffix."""

    oracles: tuple[CylinderOracle, ...]
    budget: int

    def __call__(self, stage: int, prefix: BitWord) -> BitWord:
        oracle = self.oracles[stage % len(self.oracles)]
        hole = find_hole(oracle, prefix, self.budget)
        if hole is None:
            raise HoleNotFound(f"stage {stage}: no hole within {self.budget} extra bits")
        return hole.suffix_from(prefix.length)


@dataclass(frozen=True)
class ScriptedSpAdversary:
    """Replays a fixed list of suffixes, repeating the last one if short."""

    suffixes: tuple[BitWord, ...]

    def __call__(self, stage: int, prefix: BitWord) -> BitWord:
        return self.suffixes[min(stage, len(self.suffixes) - 1)]


def _progressions_confined(zones: Sequence[tuple[int, int]]) -> tuple[bool, str]:
    """Check that every 3-term progression inside the zone positions stays in
    one zone. Exhaustive over the (small) set of zone positions."""
    zone_of: dict[int, int] = {}
    for idx, (a, b) in enumerate(zones):
        for p in range(a, b):
            zone_of[p] = idx
    marked = sorted(zone_of)
    for i, a in enumerate(marked):
        for mid in marked[i + 1 :]:
            third = 2 * mid - a
            if third in zone_of and not (
                zone_of[a] == zone_of[mid] == zone_of[third]
            ):
                return False, f"progression {a},{mid},{third} spans zones"
    return True, ""


def build_sp_escape(suffix_budget: int, adversary: SpAdversary, stages: int) -> WitnessTrace:
    """Staged zero-padding construction against a bounded suffix adversary.

    Starts from the all-zero word of length suffix_budget + 1. Each stage
    appends the adversary's suffix (at most suffix_budget bits), then pads
    with max(current length + 1, suffix_budget + 1) zeros; the padding more
    than doubles the prefix, which confines arithmetic progressions to
    single adversary zones once progressions have at least three terms.

    Recorded checks: the ones of the final prefix admit no progression of
    length suffix_budget + 1; the final prefix extends every stage word; and
    the confinement property itself, replayed exhaustively. At budget 1 the
    first check can legitimately fail (every pair of ones is a length-2
    progression); runs are permitted and the failure is recorded honestly.
    """
    if suffix_budget < 1:
        raise ConfigError("suffix budget must be at least 1")
    if stages < 1:
        raise ConfigError("need at least one stage")
    prefix = BitWord.zeros(suffix_budget + 1)
    records = []
    zones: list[tuple[int, int]] = []
    starred_words: list[BitWord] = []
    for m in range(stages):
        suffix = adversary(m, prefix)
        if suffix.length > suffix_budget:
            raise AdversaryBudgetViolation(
                f"stage {m}: suffix of {suffix.length} bits exceeds budget {suffix_budget}"
            )
        starred = prefix.concat(suffix)
        zones.append((prefix.length, starred.length))
        starred_words.append(starred)
        pad = max(starred.length + 1, suffix_budget + 1)
        prefix = starred.concat(BitWord.zeros(pad))
        records.append(
            StageRecord(
                stage=m,
                cut_points={
                    "zone_start": zones[-1][0],
                    "zone_end": zones[-1][1],
                    "pad": pad,
                },
                prefix_len=prefix.length,
            )
        )
    ones = FiniteSet.from_word(prefix)
    ap = contains_ap(ones, suffix_budget + 1)
    confined, confine_detail = _progressions_confined(zones)
    checks = (
        Check(
            "ones_avoid_long_progressions",
            ap is None,
            "" if ap is None else f"start={ap[0]} step={ap[1]}",
        ),
        Check(
            "prefix_extends_every_stage",
            all(prefix.extends(w) for w in starred_words),
        ),
        Check("progressions_confined_to_zones", confined, confine_detail),
    )
    summary = {
        "suffix_budget": suffix_budget,
        "stage_count": stages,
        "final_length": prefix.length,
        "zones": [list(z) for z in zones],
        "ones": list(ones.elements),
    }
    return WitnessTrace("sp_escape", tuple(records), prefix, checks, summary)


# --------------------------------------------------------------------------
# Escape under exact weight sums (per-stage dyadic exponents)


class SummableAdversary(Protocol):
    def exponents(self, stage: int) -> tuple[int, int]:
        """Dyadic exponents (radius, shrink) declared for this stage."""
        ...

    def place_hole(self, stage: int, base: BitWord, lower: int, upper: int) -> BitWord:
        """A word of length >= upper agreeing with base below lower."""
        ...


@dataclass(frozen=True)
class OnesFillingAdversary:
    """Declares exponents (stage + radius_offset, stage + shrink_offset) and
    fills the whole open window with ones, the heaviest placement allowed."""

    radius_offset: int = 2
    shrink_offset: int = 1

    def exponents(self, stage: int) -> tuple[int, int]:
        return (stage + self.radius_offset, stage + self.shrink_offset)

    def place_hole(self, stage: int, base: BitWord, lower: int, upper: int) -> BitWord:
        return base.with_ones(range(lower, upper))


def _least_cut_points(
    weights: WeightSeq, stage: int, prev_upper: int, radius_exp: int, shrink_exp: int
) -> tuple[int, int, Fraction]:
    """Least (lower, upper) cut pair for the stage, lower first then upper.

    For a fixed lower cut the window weight grows with the upper cut, so the
    minimal admissible upper cut is the only candidate; the search walks the
    lower cut up to the horizon and gives up with NoValidCutPoints.
    """
    floor = max(stage, prev_upper, radius_exp)
    tolerance = Fraction(1, 1 << stage)
    for lower in range(floor + 1, CUT_SEARCH_HORIZON + 1):
        upper = lower + shrink_exp + 1
        window = sum((weights.weight(i) for i in range(lower, upper + 1)), Fraction(0))
        if window < tolerance:
            return lower, upper, window
    raise NoValidCutPoints(
        f"stage {stage}: no window of weight below 1/2**{stage} "
        f"with lower cut at most {CUT_SEARCH_HORIZON}"
    )


def build_summable_escape(
    weights: WeightSeq, adversary: SummableAdversary, stages: int
) -> WitnessTrace:
    """Stage-wise cut-point selection and hole placement under exact sums.

    Stage n asks the adversary for its dyadic exponents (e, g), then picks
    the least cut pair (lower, upper) with

        lower > max(n, previous upper, e),
        upper - lower > g,
        weight sum over [lower, upper] < 2**-n   (exact rationals),

    pads the running prefix with zeros to the upper cut and lets the
    adversary rewrite the open window [lower, upper); bits below the lower
    cut are pinned and validated. The run-level check compares the exact
    weight of the ones above the first upper cut against the geometric
    bound 1 - 2**-stages.
    """
    if stages < 1:
        raise ConfigError("need at least one stage")
    prev_upper = 0
    prefix = BitWord.zeros(0)
    records = []
    for n in range(stages):
        radius_exp, shrink_exp = adversary.exponents(n)
        if radius_exp < 1 or shrink_exp < 1:
            raise ConfigError(
                f"stage {n}: exponents must be at least 1, got ({radius_exp}, {shrink_exp})"
            )
        lower, upper, window = _least_cut_points(weights, n, prev_upper, radius_exp, shrink_exp)
        base = prefix.concat(BitWord.zeros(upper - prefix.length))
        placed = adversary.place_hole(n, base, lower, upper)
        if placed.length < upper:
            raise AdversaryBudgetViolation(
                f"stage {n}: placement of {placed.length} bits shorter than the upper cut {upper}"
            )
        chosen = placed.restrict(upper)
        if chosen.restrict(lower) != base.restrict(lower):
            raise AdversaryBudgetViolation(
                f"stage {n}: placement disagrees with the pinned bits below cut {lower}"
            )
        tolerance = Fraction(1, 1 << n)
        records.append(
            StageRecord(
                stage=n,
                cut_points={
                    "radius_exponent": radius_exp,
                    "shrink_exponent": shrink_exp,
                    "lower_cut": lower,
                    "upper_cut": upper,
                    "window_weight": str(window),
                },
                prefix_len=upper,
                checks=(
                    Check("cut_exceeds_floor", lower > max(n, prev_upper, radius_exp)),
                    Check("window_wider_than_shrink", upper - lower > shrink_exp),
                    Check(
                        "window_weight_below_tolerance",
                        window < tolerance,
                        f"{window} < {tolerance}",
                    ),
                    Check("extends_previous_stage", chosen.extends(prefix)),
                ),
            )
        )
        prefix = chosen
        prev_upper = upper
    first_upper = records[0].cut_points["upper_cut"]
    escape = sum(
        (weights.weight(i) for i in prefix.ones() if i > first_upper), Fraction(0)
    )
    bound = Fraction((1 << stages) - 1, 1 << stages)
    checks = (
        Check(
            "escape_weight_within_bound",
            escape <= bound,
            f"{escape} <= {bound}",
        ),
    )
    summary = {
        "weights": weights.name,
        "stage_count": stages,
        "final_length": prefix.length,
        "first_upper_cut": first_upper,
        "escape_weight": str(escape),
        "escape_bound": str(bound),
    }
    return WitnessTrace("summable_escape", tuple(records), prefix, checks, summary)


# --------------------------------------------------------------------------
# Escape inside a zeros-off-support family with per-stage tight windows


def is_k_tight(t: BitWord, k: int, support: Support) -> bool:
    """True iff the k positions right after t all lie in the support.

    For the zeros-off-support family this says exactly that every k-bit
    extension of t still meets the family; k = 0 is vacuously tight.
    """
    if k < 0:
        raise ValueError("tightness width must be a natural")
    return all(pos in support for pos in range(t.length, t.length + k))


class TrybaAdversary(Protocol):
    def budgets(self, stage: int) -> tuple[int, int]:
        """(length floor, hole budget) declared for this stage."""
        ...

    def extend(self, stage: int, prefix: BitWord) -> BitWord:
        """An extension of the tight prefix, within the hole budget."""
        ...


@dataclass(frozen=True)
class FirstSlotAdversary:
    """Declares budgets (2k, k) and answers each tight prefix with a single
    one in the first tight slot, the smallest placement meeting the family."""

    def budgets(self, stage: int) -> tuple[int, int]:
        return (2 * stage, stage)

    def extend(self, stage: int, prefix: BitWord) -> BitWord:
        return prefix.append(1)


def _validated_interval(support: Support, index: int) -> tuple[int, int]:
    if support.interval is None:
        raise ConfigError(f"support {support.name!r} does not enumerate intervals")
    lo, hi = support.interval(index)
    if hi - lo < index:
        raise ConfigError(f"interval {index} of {support.name!r} has fewer than {index} slots")
    if index > 1:
        prev_lo, prev_hi = support.interval(index - 1)
        if prev_hi > lo:
            raise ConfigError(f"intervals {index - 1} and {index} of {support.name!r} overlap")
    return lo, hi


def build_tryba_escape(
    support: Support, adversary: TrybaAdversary, stages: int
) -> WitnessTrace:
    """Builds a prefix consistent with the zeros-off-support family while a
    per-stage adversary carves holes inside tight windows.

    Stage k: pad with zeros past the adversary's length floor, pad further
    with zeros to the start of the first support interval indexed above the
    hole budget (every budget-respecting extension of such a prefix stays in
    the family), then accept the adversary's extension. Family membership is
    validated before the length budget, so an over-long word whose stray one
    leaves the support is reported as the family violation it is; a word
    that merely runs long raises the budget violation.
    """
    if stages < 1:
        raise ConfigError("need at least one stage")
    prefix = BitWord.zeros(0)
    records = []
    for k in range(1, stages + 1):
        length_floor, hole_budget = adversary.budgets(k)
        if length_floor < 0 or hole_budget < 0:
            raise ConfigError(f"stage {k}: budgets must be naturals")
        if prefix.length <= length_floor:
            prefix = prefix.concat(BitWord.zeros(length_floor + 1 - prefix.length))
        index = hole_budget + 1
        lo, hi = _validated_interval(support, index)
        while lo < prefix.length:
            index += 1
            lo, hi = _validated_interval(support, index)
        prefix = prefix.concat(BitWord.zeros(lo - prefix.length))
        tight = is_k_tight(prefix, hole_budget, support)
        extended = adversary.extend(k, prefix)
        if not extended.extends(prefix):
            raise AdversaryBudgetViolation(f"stage {k}: word does not extend its prompt")
        if zero_constrained_empty(support, ZeroMode.ZEROS_OFF_SUPPORT, extended):
            stray = next(p for p in extended.ones() if p not in support)
            raise AdversaryLeftP(f"stage {k}: one at position {stray} lies outside the support")
        if extended.length > prefix.length + hole_budget:
            raise AdversaryBudgetViolation(
                f"stage {k}: {extended.length - prefix.length} extra bits exceed budget {hole_budget}"
            )
        records.append(
            StageRecord(
                stage=k,
                cut_points={
                    "length_floor": length_floor,
                    "hole_budget": hole_budget,
                    "tight_interval_index": index,
                    "tight_start": lo,
                },
                prefix_len=extended.length,
                checks=(Check("window_is_tight", tight, f"width {hole_budget} at {lo}"),),
            )
        )
        prefix = extended
    strays = [p for p in prefix.ones() if p not in support]
    checks = (
        Check(
            "ones_confined_to_support",
            not strays,
            "" if not strays else f"stray ones at {strays}",
        ),
    )
    summary = {
        "support": support.name,
        "stage_count": stages,
        "final_length": prefix.length,
        "ones": list(prefix.ones()),
    }
    return WitnessTrace("tryba_escape", tuple(records), prefix, checks, summary)
