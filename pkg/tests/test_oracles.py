import random

import pytest

from porolab.bitseq import BitWord
from porolab.bruteforce import PrefixRejector, bf_empty_to_depth
from porolab.errors import ConfigError, UnknownPreset
from porolab.families import FiniteSet
from porolab.oracles import (
    Shifted,
    UnionSpec,
    ZeroConstrained,
    ZeroMode,
    ap_free_spec,
    build_oracle,
    explicit_support,
    hereditary_empty,
    resolve_family,
    run_free_spec,
    shift_oracle,
    spec_from_json,
    spec_to_json,
    squares_pairs_support,
    support_preset,
    tryba_intervals_support,
    zero_constrained_empty,
)


def w(text: str) -> BitWord:
    return BitWord.from_str(text)


def random_word(rng: random.Random, max_len: int) -> BitWord:
    length = rng.randint(0, max_len)
    return BitWord(rng.getrandbits(length) if length else 0, length)


class TestSupports:
    def test_squares_pairs_membership(self):
        support = squares_pairs_support()
        expected = set()
        for n in range(1, 9):
            expected.update((n * n, n * n + 1))
        got = {k for k in range(64) if k in support}
        assert got == {k for k in expected if k < 64}
        assert got == {1, 2, 4, 5, 9, 10, 16, 17, 25, 26, 36, 37, 49, 50}
        assert 0 not in support

    def test_tryba_intervals(self):
        support = tryba_intervals_support()
        assert support.interval(1) == (1, 2)
        assert support.interval(2) == (4, 6)
        assert support.interval(3) == (9, 12)
        expected = {k for n in range(1, 9) for k in range(n * n, n * n + n) if k < 64}
        assert {k for k in range(64) if k in support} == expected

    def test_preset_lookup(self):
        assert support_preset("squares_pairs").name == "squares_pairs"
        with pytest.raises(UnknownPreset):
            support_preset("nope")


class TestHereditaryEmpty:
    def test_three_ones_in_a_row_kill_ap_free(self):
        assert hereditary_empty(ap_free_spec(3), w("111")) is True

    def test_progression_free_prefix_survives(self):
        # independent scan: {0, 1, 3} holds no 3-term progression
        members = {0, 1, 3}
        hits = [
            (a, r)
            for a in members
            for r in range(1, 4)
            if {a, a + r, a + 2 * r} <= members
        ]
        assert hits == []
        assert hereditary_empty(ap_free_spec(3), w("1101")) is False

    def test_run_of_two_kills_run_free(self):
        assert hereditary_empty(run_free_spec(2), w("011")) is True

    def test_matches_definition_on_ones(self):
        spec = ap_free_spec(3)
        rng = random.Random(5)
        for _ in range(300):
            word = random_word(rng, 14)
            assert hereditary_empty(spec, word) == spec.bad(FiniteSet.from_word(word))


class TestZeroConstrainedEmpty:
    # fixture: pairs from index 2 up, plus {0, 1}; position 2 stays outside
    fixture = explicit_support("fixture", {0, 1, 4, 5, 9, 10, 16, 17})

    def test_one_on_support_kills_zeros_on_mode(self):
        assert zero_constrained_empty(self.fixture, ZeroMode.ZEROS_ON_SUPPORT, w("1"))

    def test_one_off_support_is_harmless_in_zeros_on_mode(self):
        assert 2 not in self.fixture
        assert not zero_constrained_empty(self.fixture, ZeroMode.ZEROS_ON_SUPPORT, w("001"))

    def test_one_off_support_kills_zeros_off_mode(self):
        support = tryba_intervals_support()
        assert 3 not in support
        assert zero_constrained_empty(support, ZeroMode.ZEROS_OFF_SUPPORT, w("0001"))

    def test_all_zero_words_never_empty(self):
        for mode in ZeroMode:
            assert not zero_constrained_empty(self.fixture, mode, BitWord.zeros(12))


class TestShiftOracle:
    def test_empty_flip_set_is_identity(self):
        base = build_oracle(ap_free_spec(3))
        shifted = shift_oracle(base, ())
        rng = random.Random(7)
        for _ in range(500):
            word = random_word(rng, 12)
            assert shifted.is_empty(word) == base.is_empty(word)

    def test_single_flip_relocates_the_query(self):
        support = explicit_support("with_zero", {0, 4, 5})
        base = build_oracle(ZeroConstrained(support, ZeroMode.ZEROS_ON_SUPPORT))
        shifted = shift_oracle(base, FiniteSet.of([0]))
        assert base.is_empty(w("1")) is True
        assert shifted.is_empty(w("0")) == base.is_empty(w("1")) is True

    def test_double_shift_restores_base(self):
        base = build_oracle(run_free_spec(2))
        twice = shift_oracle(shift_oracle(base, (1, 3)), (1, 3))
        rng = random.Random(9)
        for _ in range(500):
            word = random_word(rng, 12)
            assert twice.is_empty(word) == base.is_empty(word)

    def test_offsets_beyond_the_word_are_inert(self):
        base = build_oracle(run_free_spec(2))
        shifted = shift_oracle(base, (50,))
        assert shifted.is_empty(w("011")) == base.is_empty(w("011"))


def all_specs_under_test():
    return [
        ap_free_spec(2),
        ap_free_spec(3),
        ap_free_spec(4),
        run_free_spec(1),
        run_free_spec(2),
        run_free_spec(3),
        run_free_spec(4),
        resolve_family("psquares"),
        resolve_family("ptryba"),
        Shifted(run_free_spec(2), (0, 2)),
        UnionSpec((ap_free_spec(3), run_free_spec(2))),
    ]


@pytest.mark.parametrize("spec", all_specs_under_test(), ids=lambda s: str(spec_to_json(s)))
def test_oracles_monotone_under_extension(spec):
    oracle = build_oracle(spec)
    rng = random.Random(1234)
    for _ in range(10_000):
        s = random_word(rng, 16)
        t = random_word(rng, 8)
        if oracle.is_empty(s):
            assert oracle.is_empty(s.concat(t))


@pytest.mark.parametrize(
    "spec", [ap_free_spec(2), ap_free_spec(3), run_free_spec(2), run_free_spec(3)]
)
def test_bad_predicates_monotone_on_one_sets(spec):
    # once a one-set is bad, every superset within the horizon stays bad
    rng = random.Random(4321)
    for _ in range(2_000):
        d = rng.randint(1, 32)
        smaller = [k for k in range(d) if rng.random() < 0.4]
        larger = sorted(set(smaller) | {k for k in range(d) if rng.random() < 0.3})
        if spec.bad(FiniteSet.of(smaller, d)):
            assert spec.bad(FiniteSet.of(larger, d))


def test_union_is_conjunction_and_matches_bruteforce():
    members = (ap_free_spec(3), run_free_spec(2))
    union = build_oracle(UnionSpec(members))
    parts = [build_oracle(m) for m in members]
    rej = PrefixRejector.from_oracle(union)
    for length in range(7):
        for bits in range(1 << length):
            word = BitWord(bits, length)
            conj = all(p.is_empty(word) for p in parts)
            assert union.is_empty(word) == conj
            assert bf_empty_to_depth(rej, word, 8) == union.is_empty(word)


class TestPresetsAndJson:
    def test_resolve_family_patterns(self):
        assert resolve_family("en3").name == "en3"
        assert resolve_family("thickplus2").name == "thickplus2"
        assert resolve_family("psquares").mode is ZeroMode.ZEROS_ON_SUPPORT
        assert resolve_family("ptryba").mode is ZeroMode.ZEROS_OFF_SUPPORT
        with pytest.raises(UnknownPreset):
            resolve_family("en0")
        with pytest.raises(UnknownPreset):
            resolve_family("mystery")

    @pytest.mark.parametrize(
        "name", ["en2", "en4", "thickplus1", "thickplus4", "psquares", "ptryba"]
    )
    def test_round_trip_presets(self, name):
        spec = resolve_family(name)
        assert spec_from_json(spec_to_json(spec)) == spec

    def test_round_trip_composites(self):
        spec = UnionSpec(
            (Shifted(ap_free_spec(3), (0, 2)), resolve_family("psquares"))
        )
        assert spec_from_json(spec_to_json(spec)) == spec

    @pytest.mark.parametrize(
        "obj",
        [
            {"variant": "en", "n": 0},
            {"variant": "thickplus"},
            {"variant": "zero_constrained", "support": "nope", "mode": "zeros_on_support"},
            {"variant": "zero_constrained", "support": "squares_pairs", "mode": "sideways"},
            {"variant": "shifted", "base": {"variant": "en", "n": 2}, "F": [-1]},
            {"variant": "union", "members": []},
            {"variant": "other"},
            "en3",
        ],
    )
    def test_malformed_json_rejected(self, obj):
        with pytest.raises((ConfigError, UnknownPreset)):
            spec_from_json(obj)
