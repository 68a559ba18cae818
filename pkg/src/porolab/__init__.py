"""Bounded porosity verification over the binary sequence space.

Exact finite deciders for combinatorial set families, cylinder-emptiness
oracles, a bounded porosity-checking engine, and stage-wise constructors
for diagonal escape prefixes, fronted by a CLI and an HTTP service.
"""

__version__ = "0.1.0"

from .bitseq import (
    INFINITE,
    BitWord,
    DyadicRadius,
    ball_to_cylinder,
    lex_word,
    lex_words,
    rho_exponent,
)
from .bruteforce import PrefixRejector, bf_empty_to_depth
from .errors import (
    AdversaryBudgetViolation,
    AdversaryLeftP,
    BudgetExceeded,
    ConfigError,
    DepthTooLarge,
    HoleNotFound,
    NoValidCutPoints,
    PorolabError,
    PrefixTooShort,
    UnknownPreset,
    WindowExceedsHorizon,
)
from .families import (
    DensityStats,
    FiniteSet,
    WeightSeq,
    constant_weights,
    contains_ap,
    harmonic_weights,
    log_weights,
    max_gap,
    max_interval_len,
    partial_weight_sum,
    ps_block_witness,
    weight_preset,
    window_density,
)
from .oracles import (
    CylinderOracle,
    FamilySpec,
    Hereditary,
    Shifted,
    Support,
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
from .porosity import (
    NPorosityParams,
    Outcome,
    PorosityParams,
    PorosityVerdict,
    check_n_porosity,
    check_porosity,
    check_upper_porosity_at,
    find_hole,
)
from .witness import (
    Check,
    FirstSlotAdversary,
    HoleFinderAdversary,
    OnesFillingAdversary,
    ScriptedSpAdversary,
    StageRecord,
    WitnessTrace,
    build_sp_escape,
    build_summable_escape,
    build_tryba_escape,
    is_k_tight,
)

__all__ = [name for name in dir() if not name.startswith("_")]
