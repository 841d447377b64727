"""Subshifts, sliding block codes and continuous extension to periodic points."""

from .analysis import (
    EntropyResult,
    HypothesisReport,
    check_theorem_hypotheses,
    enumerate_periodic_orbits,
    entropy,
    fixed_point_counts,
    has_isolated_periodic_point_one_sided,
    is_mixing,
    is_transitive,
    periodic_point_is_synchronizing,
    trace_counts,
)
from .codes import (
    SlidingBlockCode,
    apply_code,
    code_maps_into,
    compose,
    higher_block_code,
    identity_code,
    marker_swap_involution,
    shift_code,
    symbol_map_code,
    xor_code,
)
from .core import (
    Alphabet,
    PeriodicWord,
    PointPresentation,
    Side,
    Window,
    format_point,
    is_periodic,
    parse_point,
    periodic_point,
    shift_point,
    splice,
    window_of,
)
from .extension import (
    BudgetExhausted,
    ExtensionResult,
    ImageSetApproximation,
    Verdict,
    approximate_image_set,
    aut_roundtrip,
    extend,
    extend_one_sided,
    splice_aperiodic_context,
)
from .oracles import (
    BUILTIN_ORACLES,
    ContinuityWitness,
    EquivariantOracle,
    builtin_oracle,
    continuity_probe,
    oracle_from_code,
)
from .presentations import (
    LabeledGraph,
    ShiftPresentation,
    contains_point,
    determinize_and_minimize,
    power_recode,
    sft_from_forbidden,
    shift_from_regex,
    word_in_language,
)

__all__ = [name for name in dir() if not name.startswith("_")]
