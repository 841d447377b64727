"""Alphabets, words, periodic words and eventually periodic points.

Words are plain tuples of symbol strings.  Points are represented by
:class:`PointPresentation`, which covers every sequence of the form
``u^-inf w v^inf`` (two-sided) or ``w v^inf`` (one-sided).  Presentations
are normalized on construction, so two presentations compare equal exactly
when they denote the same point.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

Symbol = str
Word = tuple[Symbol, ...]


class Side(enum.Enum):
    ONE = "one"
    TWO = "two"

    @classmethod
    def parse(cls, text: str) -> "Side":
        text = text.strip().lower()
        if text in ("one", "one-sided", "1"):
            return cls.ONE
        if text in ("two", "two-sided", "2"):
            return cls.TWO
        raise ValueError(f"unknown sidedness {text!r}")


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbols."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        for a in symbols:
            if not isinstance(a, str) or not a or any(c.isspace() for c in a):
                raise ValueError(f"bad symbol {a!r}")

    @classmethod
    def of(cls, symbols: str | Iterable[Symbol]) -> "Alphabet":
        if isinstance(symbols, str):
            return cls(parse_word(symbols))
        return cls(tuple(symbols))

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, a: object) -> bool:
        return a in self.symbols

    @property
    def single_char(self) -> bool:
        return all(len(a) == 1 for a in self.symbols)

    def check_word(self, w: Sequence[Symbol]) -> Word:
        w = tuple(w)
        for a in w:
            if a not in self.symbols:
                raise ValueError(f"symbol {a!r} not in alphabet {self.symbols}")
        return w

    def parse(self, text: str) -> Word:
        return self.check_word(parse_word(text))


def parse_word(text: str) -> Word:
    """Parse a word literal.

    Symbols are single characters unless the text contains whitespace, in
    which case whitespace separates (possibly multi-character) symbols.

    >>> parse_word("0110")
    ('0', '1', '1', '0')
    >>> parse_word("10 11")
    ('10', '11')
    """
    text = text.strip()
    if not text:
        return ()
    if any(c.isspace() for c in text):
        return tuple(text.split())
    return tuple(text)


def format_word(w: Sequence[Symbol]) -> str:
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


def primitive_root(w: Sequence[Symbol]) -> Word:
    """Shortest word ``r`` with ``w == r^k``."""
    w = tuple(w)
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def least_rotation(w: Sequence[Symbol]) -> int:
    """Index ``r`` such that ``w[r:] + w[:r]`` is the least rotation (Booth)."""
    w = tuple(w)
    n = len(w)
    if n == 0:
        return 0
    s = w + w
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = fail[j - k - 1]
        while i != -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if i == -1 and s[j] != s[k + i + 1]:
            if s[j] < s[k + i + 1]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k % n


def rotate(w: Sequence[Symbol], r: int) -> Word:
    w = tuple(w)
    if not w:
        return w
    r %= len(w)
    return w[r:] + w[:r]


@dataclass(frozen=True)
class PeriodicWord:
    """A primitive word read cyclically.

    ``primitive`` keeps the phase it was built with; ``canonical`` is the
    least rotation and identifies the shift orbit.
    """

    primitive: Word
    canonical_phase: int = field(init=False)

    def __post_init__(self):
        w = tuple(self.primitive)
        object.__setattr__(self, "primitive", w)
        if not w:
            raise ValueError("periodic word must be non-empty")
        if primitive_root(w) != w:
            raise ValueError(f"{format_word(w)!r} is a proper power")
        object.__setattr__(self, "canonical_phase", least_rotation(w))

    @classmethod
    def from_word(cls, w: Sequence[Symbol] | str) -> "PeriodicWord":
        if isinstance(w, str):
            w = parse_word(w)
        return cls(primitive_root(w))

    @classmethod
    def orbit(cls, w: Sequence[Symbol] | str) -> "PeriodicWord":
        """Canonical representative of the orbit of ``w^Z``."""
        p = cls.from_word(w)
        return cls(p.canonical)

    @property
    def period(self) -> int:
        return len(self.primitive)

    @property
    def canonical(self) -> Word:
        return rotate(self.primitive, self.canonical_phase)

    def same_orbit(self, other: "PeriodicWord") -> bool:
        return self.canonical == other.canonical

    def rotated(self, r: int) -> "PeriodicWord":
        return PeriodicWord(rotate(self.primitive, r))

    def point(self, side: Side = Side.TWO) -> "PointPresentation":
        """The periodic point with ``primitive`` starting at index 0."""
        if side is Side.ONE:
            return PointPresentation.one_sided((), self)
        return PointPresentation.two_sided(self, (), self)

    def __str__(self):
        return format_word(self.primitive)


@dataclass(frozen=True)
class Window:
    interval: tuple[int, int]
    contents: Word

    def __post_init__(self):
        i, j = self.interval
        if len(self.contents) != j - i + 1:
            raise ValueError("window contents do not match interval length")


@dataclass(frozen=True)
class PointPresentation:
    """Eventually periodic point ``left^-inf core right^inf``.

    Position ``-origin`` holds ``core[0]``.  The left tail word is the block
    immediately to the left of the core (its last symbol sits at
    ``-origin - 1``); the right tail word starts right after the core.
    One-sided points have ``left=None`` and ``origin=0``.

    Construction normalizes: the core is shrunk as far as possible while
    keeping index 0 inside ``[-origin, -origin + len(core)]``, so equality
    of presentations is equality of points.
    """

    side: Side
    left: PeriodicWord | None
    core: Word
    right: PeriodicWord
    origin: int = 0

    def __post_init__(self):
        core = tuple(self.core)
        object.__setattr__(self, "core", core)
        if self.side is Side.ONE:
            if self.left is not None:
                raise ValueError("one-sided point cannot have a left tail")
            if self.origin != 0:
                raise ValueError("one-sided point has origin 0")
        elif self.left is None:
            raise ValueError("two-sided point needs a left tail")
        _normalize_inplace(self)

    @classmethod
    def two_sided(cls, left, core, right, origin: int = 0) -> "PointPresentation":
        return cls(Side.TWO, _as_periodic(left), _as_word(core), _as_periodic(right), origin)

    @classmethod
    def one_sided(cls, core, right) -> "PointPresentation":
        return cls(Side.ONE, None, _as_word(core), _as_periodic(right), 0)

    @classmethod
    def from_function(
        cls,
        side: Side,
        f: Callable[[int], Symbol],
        lo: int,
        hi: int,
        left_period: int,
        right_period: int,
    ) -> "PointPresentation":
        """Build the point ``i -> f(i)``.

        ``f`` must be ``left_period``-periodic on ``(-inf, lo)`` and
        ``right_period``-periodic on ``[hi, inf)``.
        """
        if side is Side.ONE:
            lo = 0
            hi = max(hi, 0)
            core = tuple(f(i) for i in range(0, hi))
            right = tuple(f(i) for i in range(hi, hi + right_period))
            return cls(Side.ONE, None, core, PeriodicWord.from_word(right), 0)
        lo = min(lo, 0)
        hi = max(hi, lo)
        core = tuple(f(i) for i in range(lo, hi))
        left = primitive_root(tuple(f(i) for i in range(lo - left_period, lo)))
        right = tuple(f(i) for i in range(hi, hi + right_period))
        return cls(Side.TWO, PeriodicWord(left), core, PeriodicWord.from_word(right), -lo)

    # -- denotation ---------------------------------------------------------

    @property
    def lo(self) -> int:
        """Index of the first core position."""
        return -self.origin

    @property
    def hi(self) -> int:
        """Index one past the last core position."""
        return -self.origin + len(self.core)

    def __getitem__(self, i: int) -> Symbol:
        return _raw_symbol(self.side, self.left, self.core, self.right, self.origin, i)

    def window(self, i: int, j: int) -> Word:
        if self.side is Side.ONE and i < 0:
            raise IndexError("negative index on a one-sided point")
        return tuple(self[k] for k in range(i, j + 1))

    @property
    def size(self) -> int:
        """Length of the presentation (core plus both tail words)."""
        left = self.left.period if self.left is not None else 0
        return left + len(self.core) + self.right.period

    def __str__(self):
        return format_point(self)


def _as_word(w) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


def _as_periodic(w) -> PeriodicWord:
    if isinstance(w, PeriodicWord):
        return w
    return PeriodicWord.from_word(_as_word(w))


def _raw_symbol(side, left, core, right, origin, i) -> Symbol:
    j = i + origin
    if side is Side.ONE and i < 0:
        raise IndexError("negative index on a one-sided point")
    n = len(core)
    if 0 <= j < n:
        return core[j]
    if j >= n:
        return right.primitive[(j - n) % right.period]
    return left.primitive[j % left.period]


def _normalize_inplace(p: PointPresentation) -> None:
    side, left, core, right, origin = p.side, p.left, p.core, p.right, p.origin

    def f(i):
        return _raw_symbol(side, left, core, right, origin, i)

    a, b = -origin, -origin + len(core)
    rp = right.period
    if side is Side.ONE:
        s = b
        while s > 0 and f(s - 1) == f(s - 1 + rp):
            s -= 1
        new_core = tuple(f(i) for i in range(0, s))
        new_right = PeriodicWord(tuple(f(i) for i in range(s, s + rp)))
        object.__setattr__(p, "core", new_core)
        object.__setattr__(p, "right", new_right)
        return

    lp = left.period
    cap = b + lp + rp
    e = a
    while e < cap and f(e) == f(e - lp):
        e += 1
    if e >= cap:
        # left-periodic everywhere: a periodic point
        q = lp
        w = tuple(f(i) for i in range(0, q))
        pw = PeriodicWord(w)
        object.__setattr__(p, "left", pw)
        object.__setattr__(p, "core", ())
        object.__setattr__(p, "right", pw)
        object.__setattr__(p, "origin", 0)
        return
    floor_ = a - lp - rp
    s = b
    while s > floor_ and f(s - 1) == f(s - 1 + rp):
        s -= 1
    lo = e if e <= s else s
    hi = s
    lo = min(lo, 0)
    hi = max(hi, 0)
    new_core = tuple(f(i) for i in range(lo, hi))
    new_left = PeriodicWord(tuple(f(i) for i in range(lo - lp, lo)))
    new_right = PeriodicWord(tuple(f(i) for i in range(hi, hi + rp)))
    object.__setattr__(p, "left", new_left)
    object.__setattr__(p, "core", new_core)
    object.__setattr__(p, "right", new_right)
    object.__setattr__(p, "origin", -lo)


# -- operations ------------------------------------------------------------


def window_of(p: PointPresentation, interval: tuple[int, int]) -> Window:
    """Symbols of ``p`` on the closed interval ``[i, j]``.

    Raises
    ------
    IndexError
        If ``p`` is one-sided and ``i < 0``.
    """
    i, j = interval
    return Window((i, j), p.window(i, j))


def shift_point(p: PointPresentation, k: int) -> PointPresentation:
    """``sigma^k(p)``, i.e. the point ``i -> p[i + k]``."""
    if p.side is Side.ONE:
        if k < 0:
            raise ValueError("one-sided points only shift forward")
        return PointPresentation.from_function(
            Side.ONE, lambda i: p[i + k], 0, max(p.hi - k, 0), 0, p.right.period
        )
    return PointPresentation(Side.TWO, p.left, p.core, p.right, p.origin + k)


def is_periodic(p: PointPresentation) -> tuple[bool, int | None]:
    """Whether ``p`` is shift-periodic, with its least period if so."""
    if p.side is Side.ONE:
        if not p.core:
            return True, p.right.period
        return False, None
    if not p.core and p.left == p.right and p.origin == 0:
        return True, p.right.period
    return False, None


def periodic_point(w: Sequence[Symbol] | str | PeriodicWord, side: Side = Side.TWO) -> PointPresentation:
    if not isinstance(w, PeriodicWord):
        w = PeriodicWord.from_word(_as_word(w))
    return w.point(side)


def splice(
    x: PointPresentation, s: PointPresentation, y: PointPresentation, ell: int
) -> PointPresentation:
    """Glue ``x`` left of ``-ell``, ``s`` on ``[-ell, ell]`` and ``y`` right of ``ell``.

    Membership of the result in any particular shift is not checked.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    for q in (x, s, y):
        if q.side is not Side.TWO:
            raise ValueError("splice works on two-sided points")
    centre = s.window(-ell, ell)
    if x.window(-ell, ell) != centre or y.window(-ell, ell) != centre:
        raise ValueError("points disagree on the central block")

    def f(i):
        if i < -ell:
            return x[i]
        if i > ell:
            return y[i]
        return s[i]

    lo = min(x.lo, -ell)
    hi = max(y.hi, ell + 1)
    return PointPresentation.from_function(Side.TWO, f, lo, hi, x.left.period, y.right.period)


# -- literal syntax --------------------------------------------------------

_TWO_SIDED = re.compile(
    r"^\s*\[(?P<left>[^\]]*)\]\s*\^\s*-\s*inf(?P<core>[^\[@]*)"
    r"\[(?P<right>[^\]]*)\]\s*\^\s*inf\s*(?:@\s*(?P<origin>-?\d+))?\s*$"
)
_ONE_SIDED = re.compile(r"^\s*(?P<core>[^\[@]*)\[(?P<right>[^\]]*)\]\s*\^\s*inf\s*$")


def parse_point(text: str, alphabet: Alphabet | None = None) -> PointPresentation:
    """Parse ``[u]^-inf w [v]^inf @k`` or ``w [v]^inf``.

    >>> str(parse_point("[0]^-inf 1 [0]^inf @0"))
    '[0]^-inf 1 [0]^inf @0'
    """
    check = alphabet.check_word if alphabet is not None else tuple
    m = _TWO_SIDED.match(text)
    if m:
        left = check(parse_word(m["left"]))
        core = check(parse_word(m["core"]))
        right = check(parse_word(m["right"]))
        origin = int(m["origin"]) if m["origin"] is not None else 0
        if not left or not right:
            raise ValueError(f"empty tail in point literal {text!r}")
        return PointPresentation.two_sided(left, core, right, origin)
    m = _ONE_SIDED.match(text)
    if m:
        core = check(parse_word(m["core"]))
        right = check(parse_word(m["right"]))
        if not right:
            raise ValueError(f"empty tail in point literal {text!r}")
        return PointPresentation.one_sided(core, right)
    raise ValueError(f"cannot parse point literal {text!r}")


def format_point(p: PointPresentation) -> str:
    core = format_word(p.core)
    right = f"[{format_word(p.right.primitive)}]^inf"
    if p.side is Side.ONE:
        return f"{core} {right}" if core else right
    left = f"[{format_word(p.left.primitive)}]^-inf"
    middle = f" {core} " if core else " "
    return f"{left}{middle}{right} @{p.origin}"


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
