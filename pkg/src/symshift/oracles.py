"""Shift-equivariant maps known only through partial local rules.

An oracle looks at a finite window of a point and reports, for every
position of the window, the image symbol if the window already forces it
and None otherwise.  Maps that are continuous only away from the periodic
points need unboundedly large windows near those points, which is exactly
what the extension engine measures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .codes import SlidingBlockCode
from .core import (
    Alphabet,
    PointPresentation,
    Side,
    Symbol,
    Word,
    format_word,
    is_periodic,
)
from .presentations import (
    ShiftPresentation,
    complete_to_point,
    determinize_and_minimize,
    sft_from_forbidden,
    shift_from_regex,
)

Image = list  # list[Symbol | None]


class OracleDomainError(ValueError):
    """The window is not in the language of the oracle's domain."""


@dataclass(frozen=True, eq=False)
class EquivariantOracle:
    """Partial local rule of a shift-commuting map.

    Parameters
    ----------
    name
        Identifier used in reports.
    domain, codomain
        Presentations of the source and target shifts.
    local_image
        Maps a window to one entry per position: the forced image symbol
        or None.  Answers must not change when the window is extended and
        may depend only on the window contents.
    radius
        Set when every position at distance ``radius`` from both window
        ends is determined, i.e. for sliding block codes.
    admissible
        Predicate selecting the points on which the map is defined.
        Defaults to the aperiodic points.
    """

    name: str
    domain: ShiftPresentation
    codomain: ShiftPresentation
    local_image: Callable[[Word], Image] = field(repr=False)
    radius: int | None = None
    admissible: Callable[[PointPresentation], bool] | None = field(default=None, repr=False)

    @property
    def side(self) -> Side:
        return self.domain.side

    def image(self, window: Sequence[Symbol] | str) -> Image:
        w = tuple(window)
        g = determinize_and_minimize(self.domain).graph
        if w and not g.step_word(g.all_states, w):
            raise OracleDomainError(f"{format_word(w)!r} is not in the domain language")
        return self.local_image(w)

    def query(self, window: Sequence[Symbol] | str, center: int) -> Symbol | None:
        if not 0 <= center < len(window):
            raise IndexError("center outside the window")
        return self.image(window)[center]

    def admits(self, x: PointPresentation) -> bool:
        if self.admissible is not None:
            return self.admissible(x)
        return not is_periodic(x)[0]


def oracle_from_code(c: SlidingBlockCode) -> EquivariantOracle:
    """The oracle answering wherever the window covers the code's local rule."""
    m, a = c.memory, c.anticipation

    rule = c.rule

    def local(w: Word) -> Image:
        w = tuple(w)
        out: Image = [None] * len(w)
        for i in range(m, len(w) - a):
            block = w[i - m : i + a + 1]
            out[i] = rule[block] if block in rule else c.local(block)
        return out

    return EquivariantOracle(c.name or "code", c.domain, c.codomain, local, c.radius)


# -- scanning helpers ---------------------------------------------------------


def _nearest(w: Word, hit: Callable[[Symbol], bool]) -> tuple[list, list]:
    """Index of the nearest hit strictly left and strictly right of each position."""
    n = len(w)
    left: list[int | None] = [None] * n
    right: list[int | None] = [None] * n
    last = None
    for i in range(n):
        left[i] = last
        if hit(w[i]):
            last = i
    last = None
    for i in range(n - 1, -1, -1):
        right[i] = last
        if hit(w[i]):
            last = i
    return left, right


# -- the counterexample maps --------------------------------------------------


def run_flip_shift() -> ShiftPresentation:
    """Runs of 0s or 1s separated by delimiters that alternate 2, 3, 2, 3."""
    return shift_from_regex(Alphabet.of("0123"), "((0*+1*)2(0*+1*)3)*", name="run_flip")


def run_flip_automorphism() -> EquivariantOracle:
    """Complement every run that follows a 2 (equivalently, precedes a 3).

    Delimiters alternate, so a run is either ``2 a^n 3`` or ``3 a^n 2`` and
    one visible delimiter decides it: the first kind is complemented, the
    second kept.  Delimiters map to themselves.
    """
    X = run_flip_shift()

    def local(w: Word) -> Image:
        left, right = _nearest(w, lambda a: a in ("2", "3"))
        out: Image = []
        for i, a in enumerate(w):
            if a in ("2", "3"):
                out.append(a)
                continue
            before = w[left[i]] if left[i] is not None else None
            after = w[right[i]] if right[i] is not None else None
            if before == "2" or after == "3":
                out.append("1" if a == "0" else "0")
            elif before == "3" or after == "2":
                out.append(a)
            else:
                out.append(None)
        return out

    return EquivariantOracle("example:5.1", X, X, local)


def even_shift() -> ShiftPresentation:
    return shift_from_regex(Alphabet.of("01"), "(1(00)*)*", name="even")


def alternating_shift() -> ShiftPresentation:
    return shift_from_regex(Alphabet.of("012"), "(2(01)*)*", name="alternating")


def even_to_alternating_map() -> EquivariantOracle:
    """``1 0^{2n} 1 -> 2 (01)^n 2``, readable from either end of the run."""

    def local(w: Word) -> Image:
        left, right = _nearest(w, lambda a: a == "1")
        out: Image = []
        for i, a in enumerate(w):
            if a == "1":
                out.append("2")
            elif left[i] is not None:
                out.append("0" if (i - left[i]) % 2 else "1")
            elif right[i] is not None:
                out.append("1" if (right[i] - i) % 2 else "0")
            else:
                out.append(None)
        return out

    return EquivariantOracle("example:5.2", even_shift(), alternating_shift(), local)


def midpoint_marker_map() -> EquivariantOracle:
    """Mark the middle of each 0-run between two 2s with a 1.

    In a run of length ``n`` the marked cell is number ``ceil(n / 2)``
    counted from the left, so even runs mark the left of the two central
    cells.  With only one delimiter in view a 0 is still decided when every
    run length compatible with the window puts the mark elsewhere.
    """
    X = sft_from_forbidden(Alphabet.of("02"), [], name="full_02")
    Y = sft_from_forbidden(Alphabet.of("012"), [], name="full_012")

    def local(w: Word) -> Image:
        n = len(w)
        left, right = _nearest(w, lambda a: a == "2")
        out: Image = []
        for i, a in enumerate(w):
            if a == "2":
                out.append("2")
                continue
            lo, hi = left[i], right[i]
            if lo is not None and hi is not None:
                run = hi - lo - 1
                out.append("1" if i - lo == (run + 1) // 2 else "0")
            elif lo is not None:
                d = i - lo
                shortest = d + (n - 1 - i)
                out.append("0" if (shortest + 1) // 2 > d else None)
            elif hi is not None:
                d = hi - i
                shortest = d + i
                out.append("0" if shortest // 2 + 1 > d else None)
            else:
                out.append(None)
        return out

    return EquivariantOracle("example:5.3", X, Y, local)


def _nonzero(a: Symbol) -> bool:
    return a != "0"


def _has_nonzero(w) -> bool:
    return any(a != "0" for a in w)


def _not_eventually_zero(x: PointPresentation) -> bool:
    return _has_nonzero(x.right.primitive)


def _not_single_nonzero(x: PointPresentation) -> bool:
    if x.side is Side.ONE:
        raise ValueError("two-sided predicate")
    if _has_nonzero(x.left.primitive) or _has_nonzero(x.right.primitive):
        return True
    return sum(a != "0" for a in x.core) != 1


def parity_involution(two_sided: bool = False) -> EquivariantOracle:
    """Swap 1 and 2 at nonzero cells whose nearest nonzero neighbour is at odd distance.

    The one-sided map looks to the right only and is defined on points
    that are not eventually zero; the two-sided map uses the nearest
    nonzero on either side and is defined off the orbits with exactly one
    nonzero symbol.  Both are involutions because distances between
    nonzero cells are preserved.
    """
    side = Side.TWO if two_sided else Side.ONE
    X = sft_from_forbidden(Alphabet.of("012"), [], side, name="full_012")
    flip = {"1": "2", "2": "1"}

    def one_sided(w: Word) -> Image:
        _, right = _nearest(w, _nonzero)
        out: Image = []
        for i, a in enumerate(w):
            if a == "0":
                out.append("0")
            elif right[i] is None:
                out.append(None)
            else:
                out.append(flip[a] if (right[i] - i) % 2 else a)
        return out

    def both_sides(w: Word) -> Image:
        n = len(w)
        left, right = _nearest(w, _nonzero)
        out: Image = []
        for i, a in enumerate(w):
            if a == "0":
                out.append("0")
                continue
            dl = i - left[i] if left[i] is not None else None
            dr = right[i] - i if right[i] is not None else None
            if dl is not None and dr is not None:
                d = min(dl, dr)
            elif dl is not None and n - 1 - i >= dl - 1:
                d = dl
            elif dr is not None and i >= dr - 1:
                d = dr
            else:
                out.append(None)
                continue
            out.append(flip[a] if d % 2 else a)
        return out

    if two_sided:
        return EquivariantOracle("example:5.5", X, X, both_sides, None, _not_single_nonzero)
    return EquivariantOracle("example:5.4", X, X, one_sided, None, _not_eventually_zero)


BUILTIN_ORACLES: dict[str, Callable[[], EquivariantOracle]] = {
    "example:5.1": run_flip_automorphism,
    "example:5.2": even_to_alternating_map,
    "example:5.3": midpoint_marker_map,
    "example:5.4": lambda: parity_involution(two_sided=False),
    "example:5.5": lambda: parity_involution(two_sided=True),
}


def builtin_oracle(name: str) -> EquivariantOracle:
    if not name.startswith("example:"):
        name = f"example:{name}"
    try:
        return BUILTIN_ORACLES[name]()
    except KeyError:
        raise KeyError(f"unknown oracle {name!r}; known: {', '.join(BUILTIN_ORACLES)}") from None


# -- continuity probe -----------------------------------------------------------


@dataclass(frozen=True)
class ContinuityWitness:
    """Points closer and closer to ``target`` whose images disagree at ``coord``.

    ``first[k]`` and ``second[k]`` agree with the target on the ``k``-th
    central window (radius ``radii[k]``) and map ``coord`` to
    ``symbols[k][0]`` and ``symbols[k][1]`` respectively.
    """

    target: PointPresentation
    coord: int
    radii: tuple[int, ...]
    first: tuple[PointPresentation, ...]
    second: tuple[PointPresentation, ...]
    symbols: tuple[tuple[Symbol, Symbol], ...]


def _short_words(alphabet: Alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=n)


def continuity_probe(
    o: EquivariantOracle,
    target: PointPresentation,
    coord: int = 0,
    n_max: int = 12,
    max_extra: int = 2,
) -> ContinuityWitness | None:
    """Look for a discontinuity of the oracle's map at ``target``.

    For each radius ``n`` the central window of ``target`` is padded with
    up to ``max_extra`` symbols on each side; every padding that decides
    the image at ``coord`` is completed to an admissible point of the
    domain.  A witness needs two different image symbols at every radius
    ``1..n_max``.
    """
    side = o.side
    if target.side is not side:
        raise ValueError("target sidedness does not match the oracle")
    alphabet = o.domain.alphabet
    g = determinize_and_minimize(o.domain).graph
    radii, first, second, symbols = [], [], [], []
    lefts = list(_short_words(alphabet, max_extra)) if side is Side.TWO else [()]
    rights = list(_short_words(alphabet, max_extra))
    for n in range(1, n_max + 1):
        lo = min(-n, coord) if side is Side.TWO else 0
        hi = max(n, coord)
        middle = target.window(lo, hi)
        found: dict[Symbol, PointPresentation] = {}
        for left in lefts:
            for right in rights:
                context = tuple(left) + middle + tuple(right)
                if not g.step_word(g.all_states, context):
                    continue
                v = o.local_image(context)[coord - lo + len(left)]
                if v is None or v in found:
                    continue
                x = complete_to_point(
                    o.domain, context, len(left) - lo, accept=o.admits, max_extra=2
                )
                if x is not None:
                    found[v] = x
            if len(found) >= 2:
                break
        if len(found) < 2:
            return None
        (a, x), (b, y) = list(found.items())[:2]
        radii.append(n)
        first.append(x)
        second.append(y)
        symbols.append((a, b))
    return ContinuityWitness(
        target, coord, tuple(radii), tuple(first), tuple(second), tuple(symbols)
    )
