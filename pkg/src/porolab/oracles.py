"""Exact cylinder-emptiness oracles for the supported closed families.

An oracle answers "does the family miss the cylinder of this word?" exactly,
not up to a depth. For hereditary families the answer rests on the all-zeros
extension argument (see :func:`hereditary_empty`); for zero-constrained
families a single scan of the word decides. Composite families are built by
flip-shifting or unioning.

The two zero-constrained modes are deliberately distinct and named: members
of a zeros-off-support family may place ones only inside the support, while
members of a zeros-on-support family are zero across the support. Note that
for the zeros-on-support kind, a one at position k empties the cylinder only
when k lies in the support; a one elsewhere constrains nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from math import isqrt
from typing import Any, Callable, Iterable

from .bitseq import BitWord
from .errors import ConfigError, UnknownPreset
from .families import FiniteSet, contains_ap, max_interval_len


@dataclass(frozen=True)
class Support:
    """Decidable membership for a (possibly infinite) set of naturals.

    ``interval``, when present, enumerates the set as increasing pairwise
    disjoint intervals [lo_i, hi_i) indexed from 1; constructions that pad a
    word up to an interval start require it.
    """

    name: str
    member: Callable[[int], bool] = field(compare=False, repr=False)
    interval: Callable[[int], tuple[int, int]] | None = field(
        default=None, compare=False, repr=False
    )

    def __contains__(self, k: int) -> bool:
        return k >= 0 and self.member(k)


def squares_pairs_support() -> Support:
    """Squares and their successors: {1, 2, 4, 5, 9, 10, 16, 17, ...}."""

    def member(k: int) -> bool:
        r = isqrt(k)
        return k >= 1 and (r * r == k or k - r * r == 1)

    return Support("squares_pairs", member)


def tryba_intervals_support() -> Support:
    """Union of the intervals [i*i, i*i + i) for i >= 1; block i has i slots."""

    def member(k: int) -> bool:
        r = isqrt(k)
        return r >= 1 and k < r * r + r

    def interval(i: int) -> tuple[int, int]:
        if i < 1:
            raise ValueError("interval index starts at 1")
        return (i * i, i * i + i)

    return Support("tryba_intervals", member, interval)


def explicit_support(name: str, elements: Iterable[int]) -> Support:
    """Support backed by an explicit finite set; membership beyond it is false."""
    fixed = frozenset(elements)
    return Support(name, lambda k: k in fixed)


class ZeroMode(str, Enum):
    ZEROS_ON_SUPPORT = "zeros_on_support"
    ZEROS_OFF_SUPPORT = "zeros_off_support"


@dataclass(frozen=True)
class Hereditary:
    """Family closed downward in its one-positions.

    ``bad`` detects exactly the one-sets no member may contain and must be
    monotone: once bad, every superset is bad.
    """

    name: str
    bad: Callable[[FiniteSet], bool] = field(compare=False, repr=False)


@dataclass(frozen=True)
class ZeroConstrained:
    support: Support
    mode: ZeroMode


@dataclass(frozen=True)
class Shifted:
    base: "FamilySpec"
    offsets: tuple[int, ...]


@dataclass(frozen=True)
class UnionSpec:
    members: "tuple[FamilySpec, ...]"


FamilySpec = Hereditary | ZeroConstrained | Shifted | UnionSpec


def ap_free_spec(n: int) -> Hereditary:
    """Sets containing no arithmetic progression of length n."""
    if n < 1:
        raise ConfigError("progression length must be at least 1")
    return Hereditary(f"en{n}", lambda ones: contains_ap(ones, n) is not None)


def run_free_spec(n: int) -> Hereditary:
    """Sets containing no run of n consecutive naturals."""
    if n < 1:
        raise ConfigError("run length must be at least 1")
    return Hereditary(f"thickplus{n}", lambda ones: max_interval_len(ones) >= n)


@dataclass(frozen=True)
class CylinderOracle:
    """Exact decider for "family ∩ [word] is empty", pure and stateless."""

    spec: Any
    is_empty: Callable[[BitWord], bool] = field(compare=False)


def hereditary_empty(spec: Hereditary, s: BitWord) -> bool:
    """Exact emptiness for a hereditary family.

    The all-zeros extension of s carries the fewest ones of any extension,
    so for a downward-closed family the cylinder is empty exactly when the
    ones already present in s are bad. Total, and as cheap as ``bad``.
    """
    return spec.bad(FiniteSet.from_word(s))


def zero_constrained_empty(support: Support, mode: ZeroMode, s: BitWord) -> bool:
    """Exact emptiness for a zero-constrained family.

    zeros-off-support: empty iff s has a one outside the support.
    zeros-on-support: empty iff s has a one on the support.
    """
    if mode is ZeroMode.ZEROS_OFF_SUPPORT:
        return any(k not in support for k in s.ones())
    if mode is ZeroMode.ZEROS_ON_SUPPORT:
        return any(k in support for k in s.ones())
    raise ConfigError(f"unknown zero-constraint mode {mode!r}")


def shift_oracle(base: CylinderOracle, flips) -> CylinderOracle:
    """Oracle for the family whose members are the base members flip-shifted.

    Flipping by a finite set F is an involution mapping the cylinder of s
    onto the cylinder of s xor F, so emptiness transfers exactly; offsets at
    or beyond the queried length are inert at that depth.
    """
    offsets = tuple(sorted({int(k) for k in flips}))
    if offsets and offsets[0] < 0:
        raise ConfigError("flip offsets must be naturals")
    spec = Shifted(base.spec, offsets)

    def is_empty(s: BitWord) -> bool:
        mask = 0
        for k in offsets:
            if k < s.length:
                mask |= 1 << k
        return base.is_empty(BitWord(s.bits ^ mask, s.length))

    return CylinderOracle(spec, is_empty)


def build_oracle(spec: FamilySpec) -> CylinderOracle:
    """Compile a family description into its exact emptiness oracle."""
    if isinstance(spec, Hereditary):
        return CylinderOracle(spec, lambda s: hereditary_empty(spec, s))
    if isinstance(spec, ZeroConstrained):
        return CylinderOracle(
            spec, lambda s: zero_constrained_empty(spec.support, spec.mode, s)
        )
    if isinstance(spec, Shifted):
        return shift_oracle(build_oracle(spec.base), spec.offsets)
    if isinstance(spec, UnionSpec):
        if not spec.members:
            raise ConfigError("union of no families")
        parts = tuple(build_oracle(m) for m in spec.members)
        return CylinderOracle(spec, lambda s: all(p.is_empty(s) for p in parts))
    raise ConfigError(f"unknown family spec {spec!r}")


_SUPPORT_PRESETS: dict[str, Callable[[], Support]] = {
    "squares_pairs": squares_pairs_support,
    "tryba_intervals": tryba_intervals_support,
}


def support_preset(name: str) -> Support:
    try:
        return _SUPPORT_PRESETS[name]()
    except KeyError:
        raise UnknownPreset(f"unknown support preset {name!r}") from None


def support_preset_names() -> list[str]:
    return sorted(_SUPPORT_PRESETS)


_EN = re.compile(r"^en([1-9]\d*)$")
_THICKPLUS = re.compile(r"^thickplus([1-9]\d*)$")


def resolve_family(name: str) -> FamilySpec:
    """Resolve a preset name; unknown names raise, never default."""
    m = _EN.match(name)
    if m:
        return ap_free_spec(int(m.group(1)))
    m = _THICKPLUS.match(name)
    if m:
        return run_free_spec(int(m.group(1)))
    if name == "psquares":
        return ZeroConstrained(squares_pairs_support(), ZeroMode.ZEROS_ON_SUPPORT)
    if name == "ptryba":
        return ZeroConstrained(tryba_intervals_support(), ZeroMode.ZEROS_OFF_SUPPORT)
    raise UnknownPreset(f"unknown family preset {name!r}")


def family_preset_names() -> list[str]:
    return ["en<n>", "thickplus<n>", "psquares", "ptryba"]


def spec_to_json(spec: FamilySpec) -> dict:
    """JSON description of a spec (variant tag plus parameters)."""
    if isinstance(spec, Hereditary):
        m = _EN.match(spec.name)
        if m:
            return {"variant": "en", "n": int(m.group(1))}
        m = _THICKPLUS.match(spec.name)
        if m:
            return {"variant": "thickplus", "N": int(m.group(1))}
        raise ConfigError(f"hereditary spec {spec.name!r} has no JSON form")
    if isinstance(spec, ZeroConstrained):
        if spec.support.name not in _SUPPORT_PRESETS:
            raise ConfigError(f"support {spec.support.name!r} has no JSON form")
        return {
            "variant": "zero_constrained",
            "support": spec.support.name,
            "mode": spec.mode.value,
        }
    if isinstance(spec, Shifted):
        return {"variant": "shifted", "base": spec_to_json(spec.base), "F": list(spec.offsets)}
    if isinstance(spec, UnionSpec):
        return {"variant": "union", "members": [spec_to_json(m) for m in spec.members]}
    raise ConfigError(f"unknown family spec {spec!r}")


def spec_from_json(obj: dict) -> FamilySpec:
    """Parse a JSON family description; malformed input raises ConfigError."""
    if not isinstance(obj, dict):
        raise ConfigError(f"family description must be an object, got {obj!r}")
    variant = obj.get("variant")
    if variant == "en":
        return ap_free_spec(_nat(obj, "n"))
    if variant == "thickplus":
        return run_free_spec(_nat(obj, "N"))
    if variant == "zero_constrained":
        support = support_preset(str(obj.get("support")))
        try:
            mode = ZeroMode(obj.get("mode"))
        except ValueError:
            raise ConfigError(f"unknown zero-constraint mode {obj.get('mode')!r}") from None
        return ZeroConstrained(support, mode)
    if variant == "shifted":
        flips = obj.get("F")
        if not isinstance(flips, list) or not all(isinstance(k, int) and k >= 0 for k in flips):
            raise ConfigError("shifted spec needs a list of natural offsets under 'F'")
        return Shifted(spec_from_json(obj.get("base")), tuple(sorted(set(flips))))
    if variant == "union":
        members = obj.get("members")
        if not isinstance(members, list) or not members:
            raise ConfigError("union spec needs a non-empty member list")
        return UnionSpec(tuple(spec_from_json(m) for m in members))
    raise ConfigError(f"unknown family variant {variant!r}")


def _nat(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or v < 1:
        raise ConfigError(f"field {key!r} must be a positive integer, got {v!r}")
    return v


def resolve_family_argument(value: "str | dict") -> FamilySpec:
    """Accept either a preset name or a parsed JSON description."""
    if isinstance(value, str):
        return resolve_family(value)
    return spec_from_json(value)
