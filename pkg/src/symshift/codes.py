"""Sliding block codes given by total local rules."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .core import PointPresentation, Side, Symbol, Word, format_word, parse_word
from .formats import Block, FormatError, parse_blocks, quoted_strings, split_assignment
from .presentations import (
    ShiftPresentation,
    block_symbol,
    contains_point,
    determinize_and_minimize,
    higher_block_presentation,
    language_difference,
    language_words,
    path_graph,
)


class MissingRuleError(KeyError):
    """An admissible word has no entry in a code's rule table."""

    def __init__(self, word: Word):
        super().__init__(f"no rule for admissible word {format_word(word)!r}")
        self.word = word

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True, eq=False)
class SlidingBlockCode:
    """``y_i = rule(x[i - memory .. i + anticipation])`` from ``domain`` to ``codomain``.

    The rule must cover every admissible word of length
    ``memory + 1 + anticipation`` of the domain; extra entries are allowed.
    """

    domain: ShiftPresentation
    codomain: ShiftPresentation
    memory: int
    anticipation: int
    rule: Mapping[Word, Symbol] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if self.memory < 0 or self.anticipation < 0:
            raise ValueError("memory and anticipation are non-negative")
        rule = {tuple(k): v for k, v in self.rule.items()}
        object.__setattr__(self, "rule", rule)
        for v in rule.values():
            if v not in self.codomain.alphabet:
                raise ValueError(f"rule output {v!r} is not in the codomain alphabet")
        for w in language_words(determinize_and_minimize(self.domain), self.width):
            if w not in rule:
                raise MissingRuleError(w)

    @property
    def width(self) -> int:
        return self.memory + 1 + self.anticipation

    @property
    def radius(self) -> int:
        return max(self.memory, self.anticipation)

    @classmethod
    def from_function(
        cls,
        domain: ShiftPresentation,
        codomain: ShiftPresentation,
        memory: int,
        anticipation: int,
        f: Callable[[Word], Symbol],
        name: str = "",
    ) -> "SlidingBlockCode":
        """Tabulate ``f`` on the admissible words of the domain."""
        words = language_words(determinize_and_minimize(domain), memory + 1 + anticipation)
        return cls(domain, codomain, memory, anticipation, {w: f(w) for w in words}, name)

    def local(self, word: Word) -> Symbol:
        try:
            return self.rule[tuple(word)]
        except KeyError:
            raise MissingRuleError(tuple(word)) from None

    def apply_word(self, w: Word) -> Word:
        """Image of a finite word; shorter by ``memory + anticipation``."""
        n = self.width
        return tuple(self.local(w[i : i + n]) for i in range(len(w) - n + 1))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"SlidingBlockCode{label}(memory={self.memory}, anticipation={self.anticipation})"


def apply_code(c: SlidingBlockCode, p: PointPresentation, check: bool = True) -> PointPresentation:
    """Image of an eventually periodic point under ``c``.

    Raises
    ------
    ValueError
        If ``p`` is not in the domain (with ``check``), or if ``c`` has
        memory and ``p`` is one-sided.
    MissingRuleError
        If the rule table lacks a word read from ``p``.
    """
    if check and not contains_point(c.domain.with_side(p.side), p):
        raise ValueError(f"point {p} is not in the domain")
    m, a = c.memory, c.anticipation
    if p.side is Side.ONE:
        if m:
            raise ValueError("codes on one-sided points need memory 0")
        return PointPresentation.from_function(
            Side.ONE, lambda i: c.local(p.window(i, i + a)), 0, p.hi, 0, p.right.period
        )
    return PointPresentation.from_function(
        Side.TWO,
        lambda i: c.local(p.window(i - m, i + a)),
        p.lo - a,
        p.hi + m,
        p.left.period,
        p.right.period,
    )


def compose(c1: SlidingBlockCode, c2: SlidingBlockCode) -> SlidingBlockCode:
    """The code ``c2 o c1`` (apply ``c1`` first)."""
    if c1.codomain.alphabet != c2.domain.alphabet:
        raise ValueError("codomain of the first code does not match domain of the second")
    m = c1.memory + c2.memory
    a = c1.anticipation + c2.anticipation

    def f(w: Word) -> Symbol:
        return c2.local(c1.apply_word(w))

    name = f"{c2.name}.{c1.name}" if c1.name and c2.name else ""
    return SlidingBlockCode.from_function(c1.domain, c2.codomain, m, a, f, name)


def image_graph(c: SlidingBlockCode, X: ShiftPresentation):
    """Labeled graph presenting ``c(X)``."""
    base = determinize_and_minimize(X).graph
    return path_graph(base, c.width, c.local, c.codomain.alphabet).essential()


def code_image_witness(c: SlidingBlockCode, X: ShiftPresentation, Y: ShiftPresentation) -> Word | None:
    """A word of ``c(X)`` outside the language of ``Y``, or None."""
    g = image_graph(c, X)
    target = determinize_and_minimize(Y).graph
    if g.alphabet != target.alphabet:
        extra = [a for a in g.alphabet if a not in target.alphabet]
        for q, a, _ in g.edges:
            if a in extra:
                return (a,)
    return language_difference(g, target)


def code_maps_into(c: SlidingBlockCode, X: ShiftPresentation, Y: ShiftPresentation) -> bool:
    return code_image_witness(c, X, Y) is None


def acts_as_identity(c: SlidingBlockCode) -> bool:
    """Whether ``c`` returns the symbol at its own coordinate on every admissible word."""
    if c.domain.alphabet != c.codomain.alphabet:
        return False
    return all(v == w[c.memory] for w, v in c.rule.items() if _admissible(c, w))


def _admissible(c: SlidingBlockCode, w: Word) -> bool:
    g = determinize_and_minimize(c.domain).graph
    return bool(g.step_word(g.all_states, w))


# -- fixtures ----------------------------------------------------------------


def identity_code(X: ShiftPresentation) -> SlidingBlockCode:
    return SlidingBlockCode.from_function(X, X, 0, 0, lambda w: w[0], "identity")


def symbol_map_code(
    X: ShiftPresentation, mapping: Mapping[Symbol, Symbol], Y: ShiftPresentation | None = None
) -> SlidingBlockCode:
    """One-block code; ``Y`` defaults to ``X``."""
    return SlidingBlockCode.from_function(X, Y or X, 0, 0, lambda w: mapping[w[0]], "symbol_map")


def shift_code(X: ShiftPresentation, k: int = 1) -> SlidingBlockCode:
    """The shift ``sigma^k`` as a code (``k`` may be negative)."""
    if k >= 0:
        return SlidingBlockCode.from_function(X, X, 0, k, lambda w: w[k], f"shift{k}")
    return SlidingBlockCode.from_function(X, X, -k, 0, lambda w: w[0], f"shift{k}")


def xor_code(X: ShiftPresentation) -> SlidingBlockCode:
    """``y_i = x_i xor x_{i+1}`` on a binary shift."""
    if set(X.alphabet.symbols) != {"0", "1"}:
        raise ValueError("xor needs the alphabet {0, 1}")
    return SlidingBlockCode.from_function(
        X, X, 0, 1, lambda w: str(int(w[0]) ^ int(w[1])), "xor"
    )


def marker_swap_involution(X: ShiftPresentation) -> SlidingBlockCode:
    """Swap 1 and 2 at ``i`` exactly when ``x_{i+1} = 0``.

    The symbols that decide a swap are never changed by it, so the code is
    its own inverse.
    """
    swap = {"1": "2", "2": "1"}

    def f(w):
        if w[1] == "0" and w[0] in swap:
            return swap[w[0]]
        return w[0]

    return SlidingBlockCode.from_function(X, X, 0, 1, f, "marker_swap")


def higher_block_code(X: ShiftPresentation, m: int) -> tuple[SlidingBlockCode, SlidingBlockCode]:
    """The conjugacy onto the ``m``-block presentation and its inverse."""
    Y = higher_block_presentation(X, m)
    blocks = {block_symbol(w): w for w in language_words(determinize_and_minimize(X), m)}
    forward = SlidingBlockCode.from_function(X, Y, 0, m - 1, block_symbol, f"block{m}")
    back = SlidingBlockCode.from_function(Y, X, 0, 0, lambda w: blocks[w[0]][0], f"unblock{m}")
    return forward, back


# -- code definition files ---------------------------------------------------

_RULE = re.compile(r'^rule\s+("[^"]*")\s*->\s*(\S+)$')


def code_from_block(block: Block, shifts: Mapping[str, ShiftPresentation]) -> SlidingBlockCode:
    """Build a code from ``code name { domain=X; codomain=Y; memory=..; rule "w" -> a; }``."""
    settings: dict[str, tuple[str, object]] = {}
    rule: dict[Word, Symbol] = {}
    for st in block.statements:
        m = _RULE.match(st.text)
        if m:
            (text,) = quoted_strings(st, m.group(1))
            w = parse_word(text)
            if w in rule:
                raise st.error(f"duplicate rule for {text!r}")
            rule[w] = m.group(2)
            continue
        key, value = split_assignment(st)
        if key not in ("domain", "codomain", "memory", "anticipation"):
            raise st.error(f"unknown key {key!r}")
        settings[key] = (value, st)
    for key in ("domain", "memory", "anticipation"):
        if key not in settings:
            raise FormatError(f"code {block.name!r} has no {key}", block.line, block.col)
    shift_names = {k: settings[k] for k in ("domain", "codomain") if k in settings}
    resolved = {}
    for key, (value, st) in shift_names.items():
        if value not in shifts:
            raise st.error(f"unknown shift {value!r}")
        resolved[key] = shifts[value]
    sizes = {}
    for key in ("memory", "anticipation"):
        value, st = settings[key]
        try:
            sizes[key] = int(value)
        except ValueError:
            raise st.error(f"{key} must be an integer") from None
    width = sizes["memory"] + 1 + sizes["anticipation"]
    for w in rule:
        if len(w) != width:
            raise FormatError(
                f"rule word {format_word(w)!r} has length {len(w)}, expected {width}",
                block.line,
                block.col,
            )
    try:
        return SlidingBlockCode(
            resolved["domain"],
            resolved.get("codomain", resolved["domain"]),
            sizes["memory"],
            sizes["anticipation"],
            rule,
            block.name,
        )
    except (MissingRuleError, ValueError) as exc:
        raise FormatError(str(exc), block.line, block.col) from None


def parse_code_file(text: str, shifts: Mapping[str, ShiftPresentation]) -> dict[str, SlidingBlockCode]:
    """Parse every ``code`` block; domain names resolve against ``shifts``."""
    codes = {}
    for block in parse_blocks(text):
        if block.kind != "code":
            continue
        if block.name in codes:
            raise FormatError(f"duplicate code {block.name!r}", block.line, block.col)
        codes[block.name] = code_from_block(block, shifts)
    return codes
