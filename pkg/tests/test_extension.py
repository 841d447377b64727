import random

import pytest

from symshift.codes import (
    apply_code,
    compose,
    higher_block_code,
    identity_code,
    marker_swap_involution,
    shift_code,
    symbol_map_code,
    xor_code,
)
from symshift.core import PeriodicWord, Side, is_periodic, parse_point, periodic_point
from symshift.extension import (
    BudgetExhausted,
    Verdict,
    approximate_image_set,
    aut_roundtrip,
    extend,
    extend_one_sided,
    scale_schedule,
    splice_aperiodic_context,
)
from symshift.oracles import (
    EquivariantOracle,
    even_to_alternating_map,
    midpoint_marker_map,
    oracle_from_code,
    parity_involution,
    run_flip_automorphism,
)
from symshift.presentations import contains_point, sft_from_forbidden

ZERO = PeriodicWord(("0",))


def texts(approx):
    return {"".join(w) for w in approx.windows}


# -- image set approximation -----------------------------------------------------


def test_identity_image_set(full2):
    a = approximate_image_set(oracle_from_code(identity_code(full2)), ZERO, 2)
    assert texts(a) == {"00000"}


def test_even_map_image_set_is_both_phases():
    a = approximate_image_set(even_to_alternating_map(), ZERO, 2)
    assert texts(a) == {"01010", "10101"}


def test_run_flip_image_set():
    a = approximate_image_set(run_flip_automorphism(), ZERO, 1)
    assert texts(a) == {"000", "111"}


@pytest.mark.parametrize("n", [1, 2, 4])
def test_windows_are_realized_by_admissible_points(n):
    o = even_to_alternating_map()
    a = approximate_image_set(o, ZERO, n)
    for w, r in a.windows.items():
        x = r.point
        assert contains_point(o.domain, x)
        assert o.admits(x) and not is_periodic(x)[0]
        assert x.window(-a.depth, a.depth) == tuple("0" * (2 * a.depth + 1))
        span = o.image(x.window(r.start - 3, r.start + len(r.context) + 2))
        assert tuple(span[3 + (-n - r.start) : 3 + (n - r.start) + 1]) == w


def test_windows_project_to_smaller_scales():
    o = even_to_alternating_map()
    small = approximate_image_set(o, ZERO, 2)
    big = approximate_image_set(o, ZERO, 4)
    assert {w[2:-2] for w in big.windows} == set(small.windows)


def test_depth_must_cover_scale():
    with pytest.raises(ValueError):
        approximate_image_set(even_to_alternating_map(), ZERO, 4, 2)


def test_budget_exhaustion_is_reported(full2):
    silent = EquivariantOracle("silent", full2, full2, lambda w: [None] * len(w))
    with pytest.raises(BudgetExhausted):
        approximate_image_set(silent, ZERO, 1)
    result = extend(silent, period_max=2, scale_max=2)
    assert result.verdict is Verdict.INCONCLUSIVE
    assert result.reason.startswith("budget_exhausted")


def test_scale_schedule():
    assert scale_schedule(8) == (1, 2, 4, 8)
    assert scale_schedule(5) == (1, 2, 4)


# -- extension of codes ----------------------------------------------------------


def _code_fixtures(golden, full2, full3):
    swap = symbol_map_code(full2, {"0": "1", "1": "0"})
    return [
        (identity_code(golden), golden, golden),
        (swap, full2, full2),
        (symbol_map_code(full3, {"0": "1", "1": "2", "2": "0"}), full3, full3),
        (compose(swap, shift_code(full2, 1)), full2, full2),
        (marker_swap_involution(full3), full3, full3),
        (higher_block_code(golden, 2)[0], golden, higher_block_code(golden, 2)[0].codomain),
        (xor_code(full2), full2, full2),
    ]


def test_codes_extend_to_their_own_values(golden, full2, full3):
    for c, X, Y in _code_fixtures(golden, full2, full3):
        period_max = 6 if len(X.alphabet) == 2 else 4
        result = extend(oracle_from_code(c), X, Y, period_max, 8)
        assert result.verdict is Verdict.EXTENDED, c
        for word, img in result.images.items():
            assert apply_code(c, PeriodicWord(word).point()) == img


def test_extended_images_preserve_least_period_for_conjugacies(golden, full2):
    for c, X, Y in _code_fixtures(golden, full2, sft_from_forbidden("012", []))[:2]:
        result = extend(oracle_from_code(c), X, Y, 6, 8)
        for word, img in result.images.items():
            assert img.right.period == len(word)


def test_one_sided_identity_extends():
    X = sft_from_forbidden("01", [], Side.ONE)
    result = extend_one_sided(oracle_from_code(identity_code(X)), X, 5, 8)
    assert result.verdict is Verdict.EXTENDED
    assert result.images[("0", "1")] == parse_point("[01]^inf")


def test_one_sided_code_extends_to_itself():
    X = sft_from_forbidden("012", [], Side.ONE)
    c = marker_swap_involution(X)
    result = extend_one_sided(oracle_from_code(c), X, 3, 4)
    assert result.verdict is Verdict.EXTENDED
    for word, img in result.images.items():
        assert apply_code(c, PeriodicWord(word).point(Side.ONE)) == img


def test_one_sided_requires_one_sided_oracle(full2):
    with pytest.raises(ValueError):
        extend_one_sided(oracle_from_code(identity_code(full2)))


def test_budgets_from_environment(full2, monkeypatch):
    monkeypatch.setenv("SYMSHIFT_PERIOD_MAX", "2")
    monkeypatch.setenv("SYMSHIFT_SCALE_MAX", "4")
    result = extend(oracle_from_code(identity_code(full2)))
    assert result.period_max == 2 and result.scales == (1, 2, 4)
    assert len(result.images) == 3


# -- obstructions ----------------------------------------------------------------


def test_even_map_obstruction():
    result = extend(even_to_alternating_map(), scale_max=8)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.target == periodic_point("0")
    assert result.period_in == 1 and result.period_out == 2
    for a in result.approximations:
        half = "01" * (a.scale + 1)
        assert texts(a) == {half[: 2 * a.scale + 1], half[1 : 2 * a.scale + 2]}
    assert "verdict=obstruction period_in=1 period_out=2 windows=2" in result.records()[0]


def test_run_flip_obstruction():
    result = extend(run_flip_automorphism(), scale_max=8)
    assert result.verdict is Verdict.OBSTRUCTION
    for a in result.approximations:
        n = 2 * a.scale + 1
        assert texts(a) == {"0" * n, "1" * n}
    assert not result.infinite_growth


def test_bounded_window_count_is_not_growth_at_small_budgets():
    assert not extend(run_flip_automorphism(), scale_max=2).infinite_growth
    assert not extend(midpoint_marker_map(), scale_max=2).infinite_growth


def test_midpoint_growth():
    result = extend(midpoint_marker_map(), scale_max=8)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.infinite_growth
    a = result.approximations[-1]
    ones = sorted(w.index("1") for w in texts(a) if "1" in w)
    assert ones == list(range(2 * a.scale + 1))


def test_parity_one_sided_obstruction_at_eventually_zero_point():
    result = extend_one_sided(parity_involution(), scale_max=4)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.target == parse_point("1 [0]^inf")
    assert {w[0] for w in texts(result.approximations[0])} == {"1", "2"}


def test_parity_two_sided_obstruction_at_single_nonzero():
    result = extend(parity_involution(two_sided=True), scale_max=4)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.target == parse_point("[0]^-inf 1 [0]^inf @0")


def test_obstruction_contexts_reproduce_windows():
    o = run_flip_automorphism()
    result = extend(o, scale_max=4)
    for a in result.approximations:
        for w, r in a.windows.items():
            assert contains_point(o.domain, r.point)
            img = o.image(r.point.window(-a.depth - 8, a.depth + 8))
            centre = a.depth + 8
            assert tuple(img[centre - a.scale : centre + a.scale + 1]) == w


# -- automorphism round trip -----------------------------------------------------


def test_roundtrip_identity(golden):
    assert aut_roundtrip(identity_code(golden), identity_code(golden), golden)


def test_roundtrip_marker_swap(full3):
    f = marker_swap_involution(full3)
    assert aut_roundtrip(f, f, full3, period_max=4)


def test_roundtrip_shift_and_swap(full2):
    swap = symbol_map_code(full2, {"0": "1", "1": "0"})
    f = compose(swap, shift_code(full2, 1))
    g = compose(shift_code(full2, -1), swap)
    assert aut_roundtrip(f, g, full2)


def test_roundtrip_rejects_wrong_inverse(full2):
    swap = symbol_map_code(full2, {"0": "1", "1": "0"})
    with pytest.raises(ValueError):
        aut_roundtrip(swap, identity_code(full2), full2)


# -- splicing through a synchronizing block --------------------------------------


def test_splice_golden_mean(golden):
    x = splice_aperiodic_context(golden, ZERO, ("1",), ("1",), 1)
    assert x == parse_point("[0]^-inf 1 0 1 [0]^inf @1")
    assert contains_point(golden, x)


def test_splice_retries_periodic_glue(full2):
    tail = PeriodicWord(("0", "1"))
    x = splice_aperiodic_context(full2, ZERO, (), ("1",), 1, tail, tail)
    assert not is_periodic(x)[0]
    assert x.window(0, 2) == ("0", "0", "1")


@pytest.mark.parametrize("seed", range(10))
def test_full_shift_glues_anything(full3, seed):
    rng = random.Random(seed)
    left = tuple(rng.choice("012") for _ in range(3))
    right = tuple(rng.choice("012") for _ in range(3))
    x = splice_aperiodic_context(full3, PeriodicWord(("2",)), left, right, 1)
    assert contains_point(full3, x)


def test_splice_needs_synchronizing_block(even):
    with pytest.raises(ValueError):
        splice_aperiodic_context(even, ZERO, ("1",), ("1",), 3)
