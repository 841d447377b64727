"""Extending a map from the aperiodic part to the periodic points.

Near a periodic point ``s`` the engine collects the image windows that the
oracle forces on points agreeing with ``s`` on a long central block but
differing somewhere outside it.  These windows approximate the set of
limit images of ``s``.  A single stable window at every scale gives the
image of ``s``.  Two distinct windows rule out any continuous extension.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field

from .codes import SlidingBlockCode, acts_as_identity, apply_code, code_maps_into, compose
from .core import (
    PeriodicWord,
    PointPresentation,
    Side,
    Word,
    format_point,
    format_word,
    is_periodic,
)
from .oracles import EquivariantOracle, oracle_from_code
from .presentations import (
    ShiftPresentation,
    complete_to_point,
    contains_point,
    determinize_and_minimize,
    diameter,
)
from .analysis import enumerate_periodic_orbits, is_synchronizing_word

DEFAULT_PERIOD_MAX = 6
DEFAULT_SCALE_MAX = 8
STABLE_SCALES = 3


class BudgetExhausted(RuntimeError):
    """No context decided the central window at the requested depth."""


@dataclass(frozen=True)
class RealizedWindow:
    """An image window with the admissible domain point that produces it.

    ``context`` occupies ``[start, start + len(context) - 1]`` of ``point``.
    """

    window: Word
    context: Word
    start: int
    point: PointPresentation


@dataclass(frozen=True)
class ImageSetApproximation:
    target: PointPresentation
    scale: int
    depth: int
    windows: dict[Word, RealizedWindow]
    contexts: int = 0

    @property
    def count(self) -> int:
        return len(self.windows)

    def sorted_windows(self) -> list[Word]:
        return sorted(self.windows)


def _target_point(s: PeriodicWord | PointPresentation, side: Side) -> PointPresentation:
    if isinstance(s, PeriodicWord):
        return s.point(side)
    return s


def _deviations(alphabet, avoid, max_len: int = 2):
    """The empty word and words whose symbol next to the block is not ``avoid``."""
    yield ()
    for n in range(1, max_len + 1):
        for w in itertools.product(alphabet.symbols, repeat=n):
            if w[-1 if avoid[0] == "left" else 0] != avoid[1]:
                yield w


def _offsets(period: int, scale: int, side: Side, exact: bool) -> list[tuple[int, int]]:
    if exact:
        return [(0, 0), (0, 1), (1, 0), (1, 1)]
    grid = range(2 * period + 1)
    sweep = range(2 * scale + 2 * period + 3)
    if side is Side.ONE:
        return [(0, j) for j in sweep]
    pairs = set(itertools.product(grid, grid))
    pairs |= {(i, j) for i in sweep for j in (0, 1)}
    pairs |= {(i, j) for j in sweep for i in (0, 1)}
    return sorted(pairs)


def default_depth(o: EquivariantOracle, scale: int) -> int:
    depth = 4 * scale + diameter(o.domain)
    if o.radius is not None:
        depth = max(depth, scale + o.radius)
    return depth


def approximate_image_set(
    o: EquivariantOracle,
    s: PeriodicWord | PointPresentation,
    n: int,
    N: int | None = None,
) -> ImageSetApproximation:
    """Image windows on ``[-n, n]`` (``[0, n]`` one-sided) forced near ``s``.

    Contexts are the block of ``s`` on ``[-N - i, N + j]`` flanked by short
    words that break the tails of ``s`` on at least one side, for offsets
    ``i, j`` sweeping a few periods and up to about ``2n`` cells.  Every new
    window is completed to an admissible domain point and re-queried.  For
    oracles with a finite radius one context per offset already gives the
    exact window.

    Raises
    ------
    BudgetExhausted
        If no context decides the whole window.
    """
    side = o.side
    t = _target_point(s, side)
    if not contains_point(o.domain.with_side(side), t):
        raise ValueError(f"{format_point(t)} is not in the domain")
    depth = default_depth(o, n) if N is None else N
    if depth < n:
        raise ValueError("depth must be at least the scale")
    depth = max(depth, n + max(-t.lo, t.hi))
    g = determinize_and_minimize(o.domain).graph
    alphabet = o.domain.alphabet
    exact = o.radius is not None
    period = max(t.right.period, t.left.period if t.left else 1)
    windows: dict[Word, RealizedWindow] = {}
    tried = 0
    for i, j in _offsets(period, n, side, exact):
        lo = -depth - i if side is Side.TWO else 0
        hi = depth + j
        block = t.window(lo, hi)
        rights = list(_deviations(alphabet, ("right", t[hi + 1])))
        if side is Side.TWO:
            lefts = list(_deviations(alphabet, ("left", t[lo - 1])))
        else:
            lefts = [()]
        for left in lefts:
            # the block is shared by every context at this offset
            through = g.step_word(g.step_word(g.all_states, left), block)
            if not through:
                continue
            for right in rights:
                if side is Side.TWO and not left and not right:
                    continue
                if side is Side.ONE and not right:
                    continue
                if not g.step_word(through, right):
                    continue
                context = left + block + right
                tried += 1
                start = lo - len(left)
                image = o.local_image(context)
                a = (-n if side is Side.TWO else 0) - start
                w = tuple(image[a : a + (2 * n + 1 if side is Side.TWO else n + 1)])
                if None in w or w in windows:
                    continue
                realized = _realize(o, context, start, w, n)
                if realized is not None:
                    windows[w] = realized
        if exact and windows:
            break
    if not windows:
        raise BudgetExhausted(
            f"no context decided the window of {format_point(t)} at scale {n}, depth {depth}"
        )
    return ImageSetApproximation(t, n, depth, windows, tried)


def _realize(o: EquivariantOracle, context: Word, start: int, w: Word, n: int) -> RealizedWindow | None:
    x = complete_to_point(o.domain, context, -start, accept=o.admits, max_extra=2)
    if x is None:
        return None
    if not contains_point(o.domain, x):
        raise RuntimeError("completed context left the domain")
    lo = start - 2 if o.side is Side.TWO else 0
    hi = start + len(context) + 1
    image = o.local_image(x.window(lo, hi))
    a = (-n if o.side is Side.TWO else 0) - lo
    again = tuple(image[a : a + len(w)])
    if again != w:
        raise RuntimeError("oracle answer changed when the window was extended")
    return RealizedWindow(w, context, start, x)


# -- the engine ---------------------------------------------------------------


class Verdict(enum.Enum):
    EXTENDED = "extended"
    OBSTRUCTION = "obstruction"
    INCONCLUSIVE = "inconclusive"


def _least_period(w: Word) -> int:
    n = len(w)
    for q in range(1, n + 1):
        if all(w[i] == w[i + q] for i in range(n - q)):
            return q
    return n


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of an extension attempt.

    ``images`` maps canonical orbit words to the image of the periodic
    point with that canonical phase at index 0.  For an obstruction,
    ``target`` is the point with more than one limit image and
    ``approximations`` holds the window sets at every tested scale.
    """

    verdict: Verdict
    period_max: int
    scales: tuple[int, ...]
    images: dict[Word, PointPresentation] = field(default_factory=dict)
    target: PointPresentation | None = None
    approximations: tuple[ImageSetApproximation, ...] = ()
    infinite_growth: bool = False
    reason: str = ""

    @property
    def obstruction_scale(self) -> int | None:
        for a in self.approximations:
            if a.count >= 2:
                return a.scale
        return None

    @property
    def windows(self) -> int:
        for a in self.approximations:
            if a.count >= 2:
                return a.count
        return 0

    @property
    def period_in(self) -> int | None:
        if self.target is None:
            return None
        return self.target.right.period

    @property
    def period_out(self) -> int | None:
        """Common period of the windows at the largest scale, if they look periodic."""
        if not self.approximations:
            return None
        last = self.approximations[-1]
        q = max(_least_period(w) for w in last.windows)
        return q if q <= last.scale else None

    def records(self) -> list[str]:
        lines = []
        if self.verdict is Verdict.OBSTRUCTION:
            out = self.period_out
            lines.append(
                f"verdict=obstruction period_in={self.period_in} "
                f"period_out={out if out is not None else 'none'} windows={self.windows} "
                f"scale={self.obstruction_scale} growth={str(self.infinite_growth).lower()}"
            )
            lines.append(f"target={format_point(self.target)}")
            for a in self.approximations:
                lines.append(f"scale={a.scale} depth={a.depth} windows={a.count}")
            for a in self.approximations:
                if a.count < 2:
                    continue
                for w in a.sorted_windows():
                    r = a.windows[w]
                    lines.append(
                        f"scale={a.scale} window={format_word(w)} context={format_point(r.point)}"
                    )
        elif self.verdict is Verdict.EXTENDED:
            lines.append(
                f"verdict=extended orbits={len(self.images)} period_max={self.period_max} "
                f"scale_max={max(self.scales)}"
            )
            for word, img in self.images.items():
                lines.append(f"orbit={format_word(word)} image={format_point(img)}")
        else:
            lines.append(f"verdict=inconclusive reason={self.reason}")
        return lines


def scale_schedule(scale_max: int) -> tuple[int, ...]:
    out = []
    n = 1
    while n <= scale_max:
        out.append(n)
        n *= 2
    return tuple(out)


def _budget(name: str, given: int | None, default: int) -> int:
    if given is not None:
        return given
    env = os.environ.get(name)
    return int(env) if env else default


def _boundary_targets(o: EquivariantOracle, X: ShiftPresentation, s: PeriodicWord):
    """Points of ``X`` off the oracle's domain that differ from ``s`` in one cell."""
    side = o.side
    base = s.point(side)
    for b in X.alphabet:
        if b == base[0]:
            continue
        if side is Side.ONE:
            x = PointPresentation.from_function(
                Side.ONE, lambda i, b=b: b if i == 0 else base[i], 0, 1, 0, s.period
            )
        else:
            x = PointPresentation.from_function(
                Side.TWO, lambda i, b=b: b if i == 0 else base[i], 0, 1, s.period, s.period
            )
        if is_periodic(x)[0] or not contains_point(X, x) or o.admits(x):
            continue
        yield x


def _limit_image(approx: list[ImageSetApproximation], period: int, side: Side) -> PointPresentation | str:
    """The periodic image read off stable singleton windows, or a failure reason."""
    if len(approx) < STABLE_SCALES:
        return "too_few_scales"
    for a, b in zip(approx, approx[1:]):
        (wa,), (wb,) = a.windows, b.windows
        if side is Side.TWO:
            cut = b.scale - a.scale
            if wb[cut : len(wb) - cut] != wa:
                return "unstable"
        elif wb[: len(wa)] != wa:
            return "unstable"
    last = approx[-1]
    if last.scale < period:
        return "scale_below_period"
    (w,) = last.windows
    origin = last.scale if side is Side.TWO else 0
    for q in range(1, period + 1):
        if period % q:
            continue
        if all(w[i] == w[i + q] for i in range(len(w) - q)):
            return PeriodicWord(w[origin : origin + q]).point(side)
    return "image_not_periodic"


def extend(
    o: EquivariantOracle,
    X: ShiftPresentation | None = None,
    Y: ShiftPresentation | None = None,
    period_max: int | None = None,
    scale_max: int | None = None,
) -> ExtensionResult:
    """Try to extend the oracle's map continuously to every periodic point.

    Orbits of ``X`` with period up to ``period_max`` are visited in
    canonical order, each followed by the points off the oracle's domain
    that differ from it in a single cell.  At every scale of the schedule
    ``1, 2, 4, ...`` up to ``scale_max`` the image set is approximated.

    * Two windows at some scale give an obstruction; all scales of that
      target are still computed; growth is reported when the window
      count rises strictly across at least three scales and never drops
      below the scale.
    * A single window at every scale, stable under restriction and
      periodic with a period dividing the orbit's, gives the orbit's image.
    * Anything else leaves the result inconclusive.

    Budgets default to ``SYMSHIFT_PERIOD_MAX`` and ``SYMSHIFT_SCALE_MAX``
    when those are set.
    """
    X = (X or o.domain).with_side(o.side)
    Y = (Y or o.codomain).with_side(o.side)
    period_max = _budget("SYMSHIFT_PERIOD_MAX", period_max, DEFAULT_PERIOD_MAX)
    scale_max = _budget("SYMSHIFT_SCALE_MAX", scale_max, DEFAULT_SCALE_MAX)
    scales = scale_schedule(scale_max)
    images: dict[Word, PointPresentation] = {}
    reason = ""
    for s in enumerate_periodic_orbits(X, period_max):
        s = PeriodicWord(s.canonical)
        targets = [s.point(o.side), *_boundary_targets(o, X, s)]
        for t in targets:
            approx = []
            try:
                for n in scales:
                    approx.append(approximate_image_set(o, t, n))
            except BudgetExhausted:
                reason = reason or f"budget_exhausted:{format_point(t)}"
            if any(a.count >= 2 for a in approx):
                counts = [a.count for a in approx]
                growth = (
                    len(approx) == len(scales) >= 3
                    and all(a.count >= a.scale for a in approx)
                    and all(u < v for u, v in zip(counts, counts[1:]))
                )
                return ExtensionResult(
                    Verdict.OBSTRUCTION, period_max, scales, images, t, tuple(approx), growth
                )
            if len(approx) < len(scales) or t is not targets[0]:
                continue
            img = _limit_image(approx, s.period, o.side)
            if isinstance(img, str):
                reason = reason or f"{img}:{format_word(s.canonical)}"
                continue
            if not contains_point(Y, img):
                reason = reason or f"image_outside_codomain:{format_word(s.canonical)}"
                continue
            images[s.canonical] = img
    if reason:
        return ExtensionResult(Verdict.INCONCLUSIVE, period_max, scales, images, reason=reason)
    return ExtensionResult(Verdict.EXTENDED, period_max, scales, images)


def extend_one_sided(
    o: EquivariantOracle,
    X: ShiftPresentation | None = None,
    period_max: int | None = None,
    scale_max: int | None = None,
) -> ExtensionResult:
    """:func:`extend` for oracles on one-sided shifts."""
    if o.side is not Side.ONE:
        raise ValueError("oracle is two-sided")
    return extend(o, X, None, period_max, scale_max)


def aut_roundtrip(
    f: SlidingBlockCode,
    inverse: SlidingBlockCode,
    X: ShiftPresentation | None = None,
    period_max: int = DEFAULT_PERIOD_MAX,
    scale_max: int = DEFAULT_SCALE_MAX,
) -> bool:
    """Restrict ``f`` to the aperiodic part, extend it back and compare.

    Returns True when the extension exists and agrees with ``f`` on every
    periodic orbit up to ``period_max``.

    Raises
    ------
    ValueError
        If ``inverse`` does not invert ``f`` or ``f`` does not map ``X``
        into itself.
    """
    X = X or f.domain
    if not (acts_as_identity(compose(f, inverse)) and acts_as_identity(compose(inverse, f))):
        raise ValueError("inverse does not invert the code")
    if not code_maps_into(f, X, X):
        raise ValueError("code does not map the shift into itself")
    result = extend(oracle_from_code(f), X, X, period_max, scale_max)
    if result.verdict is not Verdict.EXTENDED:
        return False
    for word, img in result.images.items():
        if apply_code(f, PeriodicWord(word).point(X.side)) != img:
            return False
    return len(result.images) == len(enumerate_periodic_orbits(X, period_max))


def splice_aperiodic_context(
    X: ShiftPresentation,
    s: PeriodicWord,
    left: Word,
    right: Word,
    ell: int,
    left_tail: PeriodicWord | None = None,
    right_tail: PeriodicWord | None = None,
    max_tries: int = 8,
) -> PointPresentation:
    """Glue ``left_tail^-inf left s^ell right right_tail^inf`` through ``s^ell``.

    The tails default to ``s``.  Because ``s^ell`` is synchronizing, the
    glued point lies in ``X`` as soon as both halves do.  A periodic result
    is retried with one more copy of ``s``.  Index 0 is the first cell of
    the ``s`` block.

    Raises
    ------
    ValueError
        If ``s^ell`` is not synchronizing, a half is not in ``X``, or no
        aperiodic glue is found within ``max_tries`` paddings.
    """
    left_tail = left_tail or s
    right_tail = right_tail or s
    left, right = tuple(left), tuple(right)
    if not is_synchronizing_word(X, s.primitive * ell):
        raise ValueError(f"{format_word(s.primitive)}^{ell} is not synchronizing")
    for k in range(ell, ell + max_tries):
        core = left + s.primitive * k + right
        x = PointPresentation.two_sided(left_tail, core, right_tail, len(left))
        if is_periodic(x)[0]:
            continue
        if not contains_point(X.with_side(Side.TWO), x):
            raise ValueError("a glued half is not in the shift")
        return x
    raise ValueError("every padding produced a periodic point")
