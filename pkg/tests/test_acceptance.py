"""End-to-end acceptance criteria.

Each criterion is a function that raises AssertionError on failure and
returns a short summary.  Under pytest every criterion records one
PASS/FAIL line, printed in the terminal summary; run this file directly to
print the same lines without pytest.
"""

import math
import random
import sys
import time

import pytest

from reference import fixed_point_count, golden_ratio_entropy, necklaces
from symshift.analysis import (
    central_word,
    check_theorem_hypotheses,
    entropy,
    enumerate_periodic_orbits,
    fixed_point_counts,
    periodic_point_is_synchronizing,
    trace_counts,
)
from symshift.codes import (
    apply_code,
    compose,
    higher_block_code,
    identity_code,
    marker_swap_involution,
    shift_code,
    symbol_map_code,
)
from symshift.core import Alphabet, PeriodicWord, PointPresentation, Side, is_periodic, parse_point, splice
from symshift.extension import Verdict, approximate_image_set, aut_roundtrip, extend, extend_one_sided
from symshift.oracles import (
    continuity_probe,
    even_to_alternating_map,
    midpoint_marker_map,
    oracle_from_code,
    parity_involution,
    run_flip_automorphism,
)
from symshift.presentations import (
    contains_point,
    count_words,
    power_recode,
    random_point,
    sft_from_forbidden,
    shift_from_regex,
)

TIME_LIMIT = 10.0
RESULTS: list[str] = []

ZERO = PeriodicWord(("0",))
SPLICE_PERIOD = 4


def golden():
    return sft_from_forbidden("01", ["11"], name="golden")


def full(k: int, side: Side = Side.TWO):
    return sft_from_forbidden("012"[:k], [], side, name=f"full{k}")


def even():
    return shift_from_regex(Alphabet.of("01"), "(1(00)*)*", name="even")


def run_flip_shift():
    return shift_from_regex(Alphabet.of("0123"), "((0*+1*)2(0*+1*)3)*", name="run_flip")


# -- criteria ------------------------------------------------------------------


def criterion_1():
    g, f2 = golden(), full(2)
    h = entropy(g)
    assert abs(h.value - 0.6942419) <= 1e-6
    assert abs(h.value - golden_ratio_entropy()) <= 1e-9
    assert h.width < 1e-9
    estimate = math.log2(count_words(g, 24)) / 24
    assert abs(h.value - estimate) < 1e-2
    h2 = entropy(f2)
    assert h2.value == 1.0
    assert abs(entropy(power_recode(g, 2).presentation).value - 2 * h.value) <= 1e-6
    assert abs(entropy(power_recode(f2, 2).presentation).value - 2.0) <= 1e-6
    return f"h(golden)={h.value:.7f} wordcount_gap={abs(h.value - estimate):.4f} h(full2)={h2.value}"


def criterion_2():
    g = golden()
    expected = [1, 3, 4, 7, 11, 18]
    assert [fixed_point_count("01", ["11"], n) for n in range(1, 7)] == expected
    orbits = necklaces("01", ["11"], 6)
    assert [sum(len(w) for w in orbits if n % len(w) == 0) for n in range(1, 7)] == expected
    assert trace_counts(g, 6) == expected
    assert fixed_point_counts(g, 6) == expected
    for k in (2, 3):
        powers = [k**n for n in range(1, 11)]
        assert trace_counts(full(k), 10) == powers
        assert fixed_point_counts(full(k), 10) == powers
    return "golden 1,3,4,7,11,18; full k-shift k^n for n<=10"


def criterion_3():
    for p in (golden(), full(2), full(3)):
        for scope in (Side.TWO, Side.ONE):
            assert check_theorem_hypotheses(p, scope, 8).holds
    r = check_theorem_hypotheses(even(), Side.TWO, 8)
    assert not r.holds and r.witness == ZERO and r.reason == "not_synchronizing"
    r_flip = check_theorem_hypotheses(run_flip_shift(), Side.TWO, 8)
    assert not r_flip.holds and r_flip.reason == "not_synchronizing"
    return f"even witness={''.join(r.witness.canonical)}; run-flip witness={''.join(r_flip.witness.canonical)}"


def _conjugacies():
    g, f2, f3 = golden(), full(2), full(3)
    swap = symbol_map_code(f2, {"0": "1", "1": "0"})
    block, _ = higher_block_code(g, 2)
    return [
        ("identity", identity_code(g), g, g),
        ("permutation", symbol_map_code(f3, {"0": "1", "1": "2", "2": "0"}), f3, f3),
        ("shift_swap", compose(swap, shift_code(f2, 1)), f2, f2),
        ("higher_block", block, g, block.codomain),
        ("marker_swap", marker_swap_involution(f3), f3, f3),
    ]


def criterion_4():
    disagreements = 0
    checked = 0
    for name, c, X, Y in _conjugacies():
        result = extend(oracle_from_code(c), X, Y, period_max=6, scale_max=8)
        assert result.verdict is Verdict.EXTENDED, name
        orbits = enumerate_periodic_orbits(X, 6)
        assert len(result.images) == len(orbits), name
        for s in orbits:
            checked += 1
            if apply_code(c, s.point()) != result.images[s.canonical]:
                disagreements += 1
    assert disagreements == 0
    return f"{checked} orbit images checked, 0 disagreements"


def criterion_5():
    result = extend(even_to_alternating_map(), scale_max=8)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.target == ZERO.point()
    by_scale = {a.scale: a for a in result.approximations}
    for n in (2, 4, 8):
        pattern = "01" * (n + 1)
        phases = {tuple(pattern[: 2 * n + 1]), tuple(pattern[1 : 2 * n + 2])}
        assert set(by_scale[n].windows) == phases
    assert result.period_in == 1 and result.period_out == 2
    return "0^Z: two phase windows of (01)^Z at scales 2,4,8; period 1 -> 2"


def criterion_6():
    o = run_flip_automorphism()
    result = extend(o, scale_max=8)
    assert result.verdict is Verdict.OBSTRUCTION
    assert result.target == ZERO.point()
    for a in result.approximations:
        n = 2 * a.scale + 1
        assert set(a.windows) == {("0",) * n, ("1",) * n}
        for w, r in a.windows.items():
            x = r.point
            assert contains_point(o.domain, x) and o.admits(x)
            assert x.window(-a.depth, a.depth) == ("0",) * (2 * a.depth + 1)
            margin = a.depth + len(r.context) + 4
            image = o.image(x.window(-margin, margin))
            assert tuple(image[margin - a.scale : margin + a.scale + 1]) == w
    scales = ",".join(str(a.scale) for a in result.approximations)
    return f"windows 0^(2n+1) and 1^(2n+1) realized at scales {scales}"


def criterion_7():
    o = midpoint_marker_map()
    sizes = {}
    for n in (4, 8, 16):
        sizes[n] = approximate_image_set(o, ZERO, n).count
        assert sizes[n] >= n
    for period_max, scale_max in ((1, 2), (2, 4), (4, 8), (6, 16)):
        assert extend(o, period_max=period_max, scale_max=scale_max).verdict is not Verdict.EXTENDED
    return "image-set sizes " + ", ".join(f"n={n}:{c}" for n, c in sizes.items())


def _involution_samples(o, rng, count=100):
    done = 0
    attempts = 0
    while done < count:
        attempts += 1
        assert attempts < 100 * count
        w = tuple(rng.choice("0012") for _ in range(rng.randint(6, 20)))
        u = o.image(w)
        known = [i for i, a in enumerate(u) if a is not None]
        if len(known) < 3:
            continue
        # longest run of decided positions
        best, start = (0, 0), known[0]
        for i, j in zip(known, known[1:] + [None]):
            if j != i + 1:
                best = max(best, (i - start + 1, start))
                start = j
        length, a = best
        if length < 3:
            continue
        v = o.image(tuple(u[a : a + length]))
        decided = [i for i, s in enumerate(v) if s is not None]
        if not decided:
            continue
        assert all(v[i] == w[a + i] for i in decided)
        done += 1
    return done


def criterion_8():
    rng = random.Random(8)
    one, two = parity_involution(), parity_involution(two_sided=True)
    samples = _involution_samples(one, rng) + _involution_samples(two, rng)
    w1 = continuity_probe(one, parse_point("1 [0]^inf"), 0, 12)
    w2 = continuity_probe(two, parse_point("[0]^-inf 1 [0]^inf @0"), 0, 12)
    for w in (w1, w2):
        assert w is not None and w.radii == tuple(range(1, 13))
        assert all(a != b for a, b in w.symbols)
    confirmed = 0
    for o in (one, two):
        seen = set()
        while len(seen) < 20:
            x = random_point(o.domain, rng, radius=4, accept=o.admits)
            if x in seen:
                continue
            seen.add(x)
            assert continuity_probe(o, x, 0, 12) is None
        confirmed += len(seen)
    return f"{samples} involution samples, witnesses at 1 0^N and the single-1 point, {confirmed} continuity points"


def _automorphisms():
    g, f2, f3 = golden(), full(2), full(3)
    swap = symbol_map_code(f2, {"0": "1", "1": "0"})
    cycle = symbol_map_code(f3, {"0": "1", "1": "2", "2": "0"})
    cycle_back = symbol_map_code(f3, {"1": "0", "2": "1", "0": "2"})
    return [
        ("identity_golden", identity_code(g), identity_code(g), g),
        ("identity_full2", identity_code(f2), identity_code(f2), f2),
        ("swap", swap, swap, f2),
        ("shift_swap", compose(swap, shift_code(f2, 1)), compose(shift_code(f2, -1), swap), f2),
        ("identity_full3", identity_code(f3), identity_code(f3), f3),
        ("cycle", cycle, cycle_back, f3),
        ("marker_swap", marker_swap_involution(f3), marker_swap_involution(f3), f3),
    ]


def criterion_9():
    fixtures = _automorphisms()
    for name, f, g, X in fixtures:
        assert aut_roundtrip(f, g, X, period_max=6, scale_max=8), name
    rng = random.Random(9)
    pairs = 0
    for (n1, f1, _, X1), (n2, f2, _, X2) in [
        (a, b) for i, a in enumerate(fixtures) for b in fixtures[i + 1 :] if a[3] is b[3]
    ]:
        aperiodic = []
        while len(aperiodic) < 20:
            x = random_point(X1, rng)
            if not is_periodic(x)[0]:
                aperiodic.append(x)
        assert any(apply_code(f1, x) != apply_code(f2, x) for x in aperiodic), (n1, n2)
        orbits = enumerate_periodic_orbits(X1, 6)
        assert any(apply_code(f1, s.point()) != apply_code(f2, s.point()) for s in orbits), (n1, n2)
        pairs += 1
    return f"{len(fixtures)} round trips; {pairs} fixture pairs separated on aperiodic points"


def criterion_10():
    rng = random.Random(10)
    fixtures = [
        golden(),
        full(2),
        full(3),
        sft_from_forbidden("01", ["010"]),
        sft_from_forbidden("01", ["111", "000"]),
        sft_from_forbidden("012", ["00", "11", "22"]),
    ]
    total = 0
    for p in fixtures:
        for s in enumerate_periodic_orbits(p, SPLICE_PERIOD):
            ok, ell = periodic_point_is_synchronizing(p, s)
            assert ok
            c = central_word(s, ell)
            for _ in range(100):
                x = random_point(p, rng, center=c)
                y = random_point(p, rng, center=c)
                assert contains_point(p, splice(x, s.point(), y, ell))
                total += 1
    e = even()
    broken = 0
    for ell in range(0, 11):
        x = PointPresentation.two_sided("0", "1", "0", ell + 1)
        y = PointPresentation.two_sided("0", "1", "0", -(ell + 1))
        assert contains_point(e, x) and contains_point(e, y)
        z = splice(x, ZERO.point(), y, ell)
        assert not contains_point(e, z)
        broken += 1
    return f"{total} splices in SFTs accepted; {broken} parity-breaking even-shift splices rejected"


CRITERIA = {
    1: ("entropy", criterion_1),
    2: ("periodic counts", criterion_2),
    3: ("hypothesis checker", criterion_3),
    4: ("extension soundness", criterion_4),
    5: ("even map obstruction", criterion_5),
    6: ("run flip obstruction", criterion_6),
    7: ("midpoint growth", criterion_7),
    8: ("parity involutions", criterion_8),
    9: ("automorphism round trip", criterion_9),
    10: ("splice correctness", criterion_10),
}


def run_criterion(number: int) -> tuple[bool, str]:
    name, check = CRITERIA[number]
    start = time.perf_counter()
    try:
        detail = check()
        elapsed = time.perf_counter() - start
        assert elapsed < TIME_LIMIT, f"took {elapsed:.1f}s"
        ok = True
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        detail = f"assertion failed: {exc}" if str(exc) else "assertion failed"
        ok = False
    line = f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'} ({detail}; {elapsed:.2f}s)"
    return ok, line


@pytest.mark.acceptance
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, line = run_criterion(number)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for number in sorted(CRITERIA):
        ok, line = run_criterion(number)
        print(line, flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)
