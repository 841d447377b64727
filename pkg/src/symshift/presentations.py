"""Finite presentations of subshifts by labeled graphs.

A subshift is presented by the labels of bi-infinite walks on an essential
labeled graph (every state has an incoming and an outgoing edge).  One-sided
shifts use the same graph and read right-infinite walks from any state.

Most queries accept nondeterministic graphs; procedures that reason about
follower sets go through :func:`determinize_and_minimize`.
"""

from __future__ import annotations

import enum
import itertools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import networkx as nx

from .core import (
    Alphabet,
    PeriodicWord,
    PointPresentation,
    Side,
    Symbol,
    Word,
    format_word,
    lcm,
    parse_word,
)
from .formats import Block, FormatError, Statement, parse_blocks, quoted_strings, split_assignment

State = Hashable
Edge = tuple[State, Symbol, State]

DEFAULT_SUBSET_CAP = 2**20


class EmptyShiftError(ValueError):
    pass


class StateExplosionError(RuntimeError):
    pass


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Provenance(enum.Enum):
    FORBIDDEN = "forbidden-words"
    REGEX = "regex"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class LabeledGraph:
    alphabet: Alphabet
    states: tuple[State, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        states = tuple(dict.fromkeys(self.states))
        edges = tuple(dict.fromkeys(self.edges))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "edges", edges)
        known = set(states)
        for q, a, r in edges:
            if q not in known or r not in known:
                raise ValueError(f"edge {q!r} -{a}-> {r!r} uses an unknown state")
            if a not in self.alphabet:
                raise ValueError(f"edge label {a!r} not in alphabet")

    @cached_property
    def out_edges(self) -> dict[State, tuple[tuple[Symbol, State], ...]]:
        out: dict[State, list] = {q: [] for q in self.states}
        for q, a, r in self.edges:
            out[q].append((a, r))
        return {q: tuple(v) for q, v in out.items()}

    @cached_property
    def in_edges(self) -> dict[State, tuple[tuple[Symbol, State], ...]]:
        inn: dict[State, list] = {q: [] for q in self.states}
        for q, a, r in self.edges:
            inn[r].append((a, q))
        return {q: tuple(v) for q, v in inn.items()}

    @cached_property
    def _delta(self) -> dict[tuple[State, Symbol], frozenset]:
        delta: dict[tuple[State, Symbol], set] = {}
        for q, a, r in self.edges:
            delta.setdefault((q, a), set()).add(r)
        return {k: frozenset(v) for k, v in delta.items()}

    @cached_property
    def all_states(self) -> frozenset:
        return frozenset(self.states)

    @property
    def is_deterministic(self) -> bool:
        seen = set()
        for q, a, _ in self.edges:
            if (q, a) in seen:
                return False
            seen.add((q, a))
        return True

    def step(self, states: Iterable[State], a: Symbol) -> frozenset:
        delta = self._delta
        out = set()
        for q in states:
            out |= delta.get((q, a), frozenset())
        return frozenset(out)

    def step_word(self, states: Iterable[State], w: Sequence[Symbol]) -> frozenset:
        current = frozenset(states)
        for a in w:
            if not current:
                break
            current = self.step(current, a)
        return current

    def preimage(self, states: Iterable[State], w: Sequence[Symbol]) -> frozenset:
        """States with a path labeled ``w`` ending in ``states``."""
        target = frozenset(states)
        for a in reversed(w):
            target = frozenset(q for q, b, r in self.edges if b == a and r in target)
        return target

    def successor(self, q: State, a: Symbol) -> State | None:
        targets = self._delta.get((q, a))
        if not targets:
            return None
        if len(targets) > 1:
            raise ValueError("successor() needs a deterministic graph")
        return next(iter(targets))

    def reversed(self) -> "LabeledGraph":
        return LabeledGraph(self.alphabet, self.states, tuple((r, a, q) for q, a, r in self.edges))

    def restricted(self, keep: Iterable[State]) -> "LabeledGraph":
        keep = set(keep)
        return LabeledGraph(
            self.alphabet,
            tuple(q for q in self.states if q in keep),
            tuple(e for e in self.edges if e[0] in keep and e[2] in keep),
        )

    def essential(self) -> "LabeledGraph":
        """Iteratively delete states without incoming or outgoing edges."""
        alive = set(self.states)
        edges = list(self.edges)
        while True:
            has_out = {q for q, _, r in edges if r in alive and q in alive}
            has_in = {r for q, _, r in edges if r in alive and q in alive}
            keep = alive & has_out & has_in
            if keep == alive:
                break
            alive = keep
            edges = [e for e in edges if e[0] in alive and e[2] in alive]
        return self.restricted(alive)

    def relabeled(self) -> "LabeledGraph":
        """Rename states to ``0..n-1`` in their current order."""
        index = {q: i for i, q in enumerate(self.states)}
        return LabeledGraph(
            self.alphabet,
            tuple(range(len(self.states))),
            tuple((index[q], a, index[r]) for q, a, r in self.edges),
        )

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.states)
        for q, a, r in self.edges:
            g.add_edge(q, r, label=a)
        return g

    def adjacency_matrix(self):
        import numpy as np

        index = {q: i for i, q in enumerate(self.states)}
        m = np.zeros((len(self.states), len(self.states)), dtype=np.int64)
        for q, _, r in self.edges:
            m[index[q], index[r]] += 1
        return m


@dataclass(frozen=True)
class ShiftPresentation:
    graph: LabeledGraph
    side: Side = Side.TWO
    deterministic: bool = False
    minimal: bool = False
    provenance: Provenance = Provenance.EXPLICIT
    name: str = field(default="", compare=False)
    memory: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.deterministic and not self.graph.is_deterministic:
            raise ValueError("graph flagged deterministic but is not")
        if self.minimal and not self.deterministic:
            raise ValueError("minimal presentations are deterministic")

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    @property
    def is_empty(self) -> bool:
        return not self.graph.states

    def with_side(self, side: Side) -> "ShiftPresentation":
        return ShiftPresentation(
            self.graph, side, self.deterministic, self.minimal, self.provenance, self.name, self.memory
        )

    def renamed(self, name: str) -> "ShiftPresentation":
        return ShiftPresentation(
            self.graph, self.side, self.deterministic, self.minimal, self.provenance, name, self.memory
        )


def explicit_shift(
    alphabet: Alphabet | str,
    edges: Iterable[Edge],
    side: Side = Side.TWO,
    name: str = "",
) -> ShiftPresentation:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    edges = tuple(edges)
    states = tuple(dict.fromkeys(q for e in edges for q in (e[0], e[2])))
    graph = LabeledGraph(alphabet, states, edges).essential()
    return ShiftPresentation(
        graph, side, graph.is_deterministic, False, Provenance.EXPLICIT, name
    )


# -- shifts of finite type ---------------------------------------------------


def _avoids(w: Word, forbidden: Iterable[Word]) -> bool:
    for f in forbidden:
        n = len(f)
        for i in range(len(w) - n + 1):
            if w[i : i + n] == f:
                return False
    return True


def sft_from_forbidden(
    alphabet: Alphabet | str,
    forbidden: Iterable[Sequence[Symbol] | str],
    side: Side = Side.TWO,
    name: str = "",
) -> ShiftPresentation:
    """De Bruijn presentation of the SFT avoiding ``forbidden``.

    States are the allowed words of length ``m - 1`` (``m`` the longest
    forbidden length, at least 2); the edge ``u -a-> (ua)[1:]`` exists when
    ``ua`` contains no forbidden factor.  The graph is trimmed to its
    essential part, so an empty shift yields a presentation with no states
    (check :attr:`ShiftPresentation.is_empty`).
    """
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    words = []
    for f in forbidden:
        w = parse_word(f) if isinstance(f, str) else tuple(f)
        if not w:
            raise ValueError("forbidden words must be non-empty")
        words.append(alphabet.check_word(w))
    m = max([2] + [len(w) for w in words])
    states = [
        u for u in itertools.product(alphabet.symbols, repeat=m - 1) if _avoids(u, words)
    ]
    edges = []
    for u in states:
        for a in alphabet:
            ua = u + (a,)
            if _avoids(ua, words):
                edges.append((u, a, ua[1:]))
    graph = LabeledGraph(alphabet, tuple(states), tuple(edges)).essential()
    return ShiftPresentation(
        graph, side, True, False, Provenance.FORBIDDEN, name, memory=m - 1
    )


# -- regular expressions -----------------------------------------------------


@dataclass(frozen=True)
class _Node:
    op: str  # "sym", "eps", "cat", "alt", "star"
    children: tuple["_Node", ...] = ()
    symbol: Symbol | None = None
    position: int | None = None


class _RegexParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.i = 0
        self.positions: list[Symbol] = []
        self._by_length = sorted(alphabet.symbols, key=len, reverse=True)

    def parse(self) -> _Node:
        node = self.expr()
        self.skip()
        if self.i < len(self.text):
            raise RegexSyntaxError(f"unexpected {self.text[self.i]!r}", self.i)
        return node

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str | None:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else None

    def expr(self) -> _Node:
        node = self.term()
        while self.peek() in ("+", "|"):
            self.i += 1
            node = _Node("alt", (node, self.term()))
        return node

    def term(self) -> _Node:
        parts = []
        while True:
            c = self.peek()
            if c is None or c in ")+|":
                break
            parts.append(self.factor())
        if not parts:
            return _Node("eps")
        node = parts[0]
        for p in parts[1:]:
            node = _Node("cat", (node, p))
        return node

    def factor(self) -> _Node:
        node = self.atom()
        while self.peek() == "*":
            self.i += 1
            node = _Node("star", (node,))
        return node

    def atom(self) -> _Node:
        c = self.peek()
        if c == "(":
            start = self.i
            self.i += 1
            node = self.expr()
            if self.peek() != ")":
                raise RegexSyntaxError("unbalanced parenthesis", start)
            self.i += 1
            return node
        if c == "*":
            raise RegexSyntaxError("'*' without operand", self.i)
        for a in self._by_length:
            if self.text.startswith(a, self.i):
                self.i += len(a)
                self.positions.append(a)
                return _Node("sym", symbol=a, position=len(self.positions) - 1)
        raise RegexSyntaxError(f"symbol {c!r} not in alphabet", self.i)


def _glushkov(node: _Node, follow: dict[int, set]) -> tuple[bool, set, set]:
    """Return (nullable, first, last) and fill ``follow``."""
    if node.op == "eps":
        return True, set(), set()
    if node.op == "sym":
        follow.setdefault(node.position, set())
        return False, {node.position}, {node.position}
    if node.op == "star":
        _, first, last = _glushkov(node.children[0], follow)
        for p in last:
            follow[p] |= first
        return True, first, last
    (n1, f1, l1), (n2, f2, l2) = (_glushkov(c, follow) for c in node.children)
    if node.op == "alt":
        return n1 or n2, f1 | f2, l1 | l2
    for p in l1:
        follow[p] |= f2
    return (
        n1 and n2,
        f1 | f2 if n1 else f1,
        l1 | l2 if n2 else l2,
    )


def shift_from_regex(
    alphabet: Alphabet | str,
    expression: str,
    side: Side = Side.TWO,
    name: str = "",
) -> ShiftPresentation:
    """Smallest subshift whose language contains ``expression*``.

    ``+`` and ``|`` both denote union.  A position automaton (one state per
    symbol occurrence) is built for the expression and closed cyclically by
    letting every final position continue with every initial one; the
    bi-infinite walks of its essential part are the concatenations of
    matches together with their limit points.
    """
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.of(alphabet)
    parser = _RegexParser(expression, alphabet)
    tree = parser.parse()
    follow: dict[int, set] = {}
    _, first, last = _glushkov(tree, follow)
    symbols = parser.positions
    edges = []
    for p in range(len(symbols)):
        targets = set(follow.get(p, ()))
        if p in last:
            targets |= first
        for q in sorted(targets):
            edges.append((p, symbols[q], q))
    graph = LabeledGraph(alphabet, tuple(range(len(symbols))), tuple(edges)).essential()
    return ShiftPresentation(graph, side, graph.is_deterministic, False, Provenance.REGEX, name)


# -- determinization and minimization ---------------------------------------


def _subset_graph(graph: LabeledGraph, cap: int) -> LabeledGraph:
    start = graph.all_states
    seen = {start: 0}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in graph.alphabet:
            t = graph.step(s, a)
            if not t:
                continue
            if t not in seen:
                if len(seen) >= cap:
                    raise StateExplosionError(f"subset construction exceeded {cap} states")
                seen[t] = len(order)
                order.append(t)
                queue.append(t)
            edges.append((s, a, t))
    return LabeledGraph(graph.alphabet, tuple(order), tuple(edges))


def _merge_followers(graph: LabeledGraph) -> LabeledGraph:
    """Merge states of a deterministic graph with equal follower languages."""
    block = {q: 0 for q in graph.states}
    n_blocks = 1
    while True:
        signatures: dict = {}
        new_block = {}
        for q in graph.states:
            sig = (block[q],) + tuple(
                sorted((a, block[r]) for a, r in graph.out_edges[q])
            )
            new_block[q] = signatures.setdefault(sig, len(signatures))
        if len(signatures) == n_blocks:
            break
        block, n_blocks = new_block, len(signatures)
    order = list(dict.fromkeys(block[q] for q in graph.states))
    index = {b: i for i, b in enumerate(order)}
    edges = tuple(dict.fromkeys((index[block[q]], a, index[block[r]]) for q, a, r in graph.edges))
    return LabeledGraph(graph.alphabet, tuple(range(len(order))), edges)


def same_language(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    return language_difference(g1, g2) is None and language_difference(g2, g1) is None


def language_difference(g1: LabeledGraph, g2: LabeledGraph) -> Word | None:
    """A word labeling a path in ``g1`` but not in ``g2``, or None."""
    start = (g1.all_states, g2.all_states)
    if not start[0]:
        return None
    seen = {start: ()}
    queue = deque([start])
    while queue:
        s1, s2 = queue.popleft()
        w = seen[(s1, s2)]
        for a in g1.alphabet:
            t1 = g1.step(s1, a)
            if not t1:
                continue
            t2 = g2.step(s2, a) if a in g2.alphabet else frozenset()
            if not t2:
                return w + (a,)
            if (t1, t2) not in seen:
                seen[(t1, t2)] = w + (a,)
                queue.append((t1, t2))
    return None


def _drop_redundant_components(graph: LabeledGraph) -> LabeledGraph:
    changed = True
    while changed:
        changed = False
        nxg = nx.DiGraph()
        nxg.add_nodes_from(graph.states)
        nxg.add_edges_from((q, r) for q, _, r in graph.edges)
        cond = nx.condensation(nxg)
        for c in nx.topological_sort(cond):
            members = cond.nodes[c]["members"]
            candidate = graph.restricted(set(graph.states) - members).essential()
            if not candidate.states:
                continue
            if same_language(candidate, graph):
                graph = candidate
                changed = True
                break
    return graph


def determinize_and_minimize(
    p: ShiftPresentation, cap: int = DEFAULT_SUBSET_CAP
) -> ShiftPresentation:
    """Right-resolving, follower-separated presentation of the same shift.

    Subset construction from the set of all states, essential trimming,
    merging of states with equal follower languages, and removal of
    strongly connected components whose deletion leaves the language
    unchanged.  For an irreducible sofic shift the result is its minimal
    right-resolving presentation.

    Raises
    ------
    StateExplosionError
        When more than ``cap`` subsets are reached.
    """
    if p.minimal:
        return p
    return _minimal_cached(p, cap)


@lru_cache(maxsize=256)
def _minimal_cached(p: ShiftPresentation, cap: int) -> ShiftPresentation:
    if p.is_empty:
        return ShiftPresentation(p.graph, p.side, True, True, p.provenance, p.name, p.memory)
    g = _subset_graph(p.graph, cap).essential()
    g = _merge_followers(g)
    g = _drop_redundant_components(g)
    g = _merge_followers(g.relabeled())
    return ShiftPresentation(g, p.side, True, True, p.provenance, p.name, p.memory)


# -- languages and membership -----------------------------------------------


def word_in_language(p: ShiftPresentation, w: Sequence[Symbol] | str) -> bool:
    """Whether ``w`` labels a path of the presentation."""
    if isinstance(w, str):
        w = parse_word(w)
    if not w:
        return True
    if any(a not in p.alphabet for a in w):
        return False
    return bool(p.graph.step_word(p.graph.all_states, w))


def language_words(p: ShiftPresentation, n: int) -> Iterator[Word]:
    """Every word of length ``n`` in the language, in lexicographic alphabet order."""
    g = p.graph

    def walk(prefix: Word, states: frozenset):
        if len(prefix) == n:
            yield prefix
            return
        for a in g.alphabet:
            t = g.step(states, a)
            if t:
                yield from walk(prefix + (a,), t)

    if g.states:
        yield from walk((), g.all_states)


def count_words(p: ShiftPresentation, n: int) -> int:
    """Number of words of length ``n``, by dynamic programming over subsets."""
    g = p.graph
    if not g.states:
        return 0
    counts = {g.all_states: 1}
    for _ in range(n):
        nxt: dict[frozenset, int] = {}
        for s, c in counts.items():
            for a in g.alphabet:
                t = g.step(s, a)
                if t:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(counts.values())


def _stable_left(graph: LabeledGraph, u: Word) -> frozenset:
    """States ending a left-infinite path labeled ``...uuu``."""
    current = graph.all_states
    while True:
        nxt = graph.step_word(current, u)
        if nxt == current:
            return current
        current = nxt


def _stable_right(graph: LabeledGraph, v: Word) -> frozenset:
    """States starting a right-infinite path labeled ``vvv...``."""
    current = graph.all_states
    while True:
        nxt = graph.preimage(current, v)
        if nxt == current:
            return current
        current = nxt


def contains_point(p: ShiftPresentation, x: PointPresentation) -> bool:
    """Decide ``x in X`` for an eventually periodic point ``x``."""
    if x.side is not p.side:
        raise ValueError(f"{x.side.value}-sided point against {p.side.value}-sided shift")
    g = p.graph
    if not g.states:
        return False
    for w in (x.core, x.right.primitive) + ((x.left.primitive,) if x.left else ()):
        if any(a not in p.alphabet for a in w):
            return False
    if x.side is Side.TWO:
        start = _stable_left(g, x.left.primitive)
    else:
        start = g.all_states
    reached = g.step_word(start, x.core)
    return bool(reached & _stable_right(g, x.right.primitive))


def diameter(p: ShiftPresentation) -> int:
    """Largest finite shortest-path distance in the minimal presentation."""
    g = determinize_and_minimize(p).graph
    nxg = nx.DiGraph()
    nxg.add_nodes_from(g.states)
    nxg.add_edges_from((q, r) for q, _, r in g.edges)
    best = 0
    for _, lengths in nx.all_pairs_shortest_path_length(nxg):
        best = max(best, max(lengths.values(), default=0))
    return best


# -- completing words to points ----------------------------------------------


def _short_words(alphabet: Alphabet, max_len: int, min_len: int = 0) -> Iterator[Word]:
    for n in range(min_len, max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=n)


def complete_to_point(
    p: ShiftPresentation,
    word: Sequence[Symbol] | str,
    origin: int = 0,
    accept: Callable[[PointPresentation], bool] | None = None,
    max_extra: int = 3,
    max_attempts: int = 20000,
    rng: random.Random | None = None,
) -> PointPresentation | None:
    """An eventually periodic point of ``p`` containing ``word``.

    ``word[origin]`` lands at index 0; one-sided points start with
    ``word`` and ignore ``origin``.  Tails are short connector words followed by a periodic
    word, searched in order of length; ``accept`` can veto candidates, for
    instance to insist on aperiodic points.  Returns None when nothing is
    found within the search bounds.
    """
    if isinstance(word, str):
        word = parse_word(word)
    word = tuple(word)
    m = determinize_and_minimize(p)
    g = m.graph
    if not word_in_language(m, word):
        return None
    alphabet = g.alphabet
    tails = [t for t in _short_words(alphabet, max_extra, 1) if PeriodicWord.from_word(t).primitive == t]
    connectors = list(_short_words(alphabet, max_extra))
    if rng is not None:
        rng.shuffle(tails)
        rng.shuffle(connectors)
    attempts = 0
    for q0 in g.states:
        end = g.step_word({q0}, word)
        if not end:
            continue
        (q1,) = end

        def right_options():
            for t in tails:
                stable = _stable_right(g, t)
                if not stable:
                    continue
                for u in connectors:
                    if g.step_word({q1}, u) & stable:
                        yield u, t

        if p.side is Side.ONE:
            for u, t in right_options():
                attempts += 1
                if attempts > max_attempts:
                    return None
                x = PointPresentation.one_sided(word + u, t)
                if accept is None or accept(x):
                    return x
            continue

        lefts = []
        for t in tails:
            stable = _stable_left(g, t)
            if not stable:
                continue
            for u in connectors:
                if q0 in g.step_word(stable, u):
                    lefts.append((u, t))
        rights = list(itertools.islice(right_options(), 400))
        for lu, lt in lefts:
            for ru, rt in rights:
                attempts += 1
                if attempts > max_attempts:
                    return None
                x = PointPresentation.two_sided(lt, lu + word + ru, rt, len(lu) + origin)
                if accept is None or accept(x):
                    return x
    return None


def random_point(
    p: ShiftPresentation,
    rng: random.Random,
    radius: int = 6,
    center: Sequence[Symbol] | None = None,
    accept: Callable[[PointPresentation], bool] | None = None,
) -> PointPresentation:
    """A random eventually periodic point of ``p``.

    A random walk of about ``radius`` steps on each side is completed with
    short periodic tails.  With ``center`` the point carries that word on
    ``[-(len(center)//2), ...]`` when it is two-sided (on ``[0, ...]`` when
    one-sided).
    """
    m = determinize_and_minimize(p)
    g = m.graph
    if not g.states:
        raise EmptyShiftError("empty shift has no points")
    for _ in range(200):
        if center is not None:
            center = tuple(center)
            starts = [q for q in g.states if g.step_word({q}, center)]
            if not starts:
                raise ValueError(f"{format_word(center)!r} is not in the language")
            q0 = rng.choice(starts)
            (q1,) = g.step_word({q0}, center)
            mid = center
        else:
            q0 = q1 = rng.choice(g.states)
            mid = ()
        left: list[Symbol] = []
        q = q0
        if p.side is Side.TWO:
            for _ in range(rng.randint(0, radius)):
                a, q = rng.choice(g.in_edges[q])
                left.append(a)
            left.reverse()
        right: list[Symbol] = []
        q = q1
        for _ in range(rng.randint(0, radius)):
            a, q = rng.choice(g.out_edges[q])
            right.append(a)
        word = tuple(left) + mid + tuple(right)
        origin = len(left) + len(mid) // 2
        x = complete_to_point(m, word, origin, accept=accept, max_extra=2, rng=rng)
        if x is not None:
            return x
    raise RuntimeError("could not build a random point")


# -- recodings ---------------------------------------------------------------


def block_symbol(block: Sequence[Symbol]) -> Symbol:
    if all(len(a) == 1 for a in block):
        return "".join(block)
    return ".".join(block)


def path_graph(
    graph: LabeledGraph,
    length: int,
    label: Callable[[Word], Symbol],
    alphabet: Alphabet,
) -> LabeledGraph:
    """Graph whose edges are the paths of ``length`` edges in ``graph``.

    States are paths of ``length - 1`` edges; the edge for a path is
    labeled by ``label`` applied to its label word.
    """
    if length < 1:
        raise ValueError("length must be positive")
    edge_list = list(graph.edges)
    out_by_state: dict[State, list[int]] = {q: [] for q in graph.states}
    for i, (q, _, _) in enumerate(edge_list):
        out_by_state[q].append(i)

    def extend(path):
        last = edge_list[path[-1]][2]
        for i in out_by_state[last]:
            yield path + (i,)

    if length == 1:
        return LabeledGraph(
            alphabet,
            graph.states,
            tuple((q, label((a,)), r) for q, a, r in edge_list),
        )
    paths = [(i,) for i in range(len(edge_list))]
    for _ in range(length - 2):
        paths = [longer for p in paths for longer in extend(p)]
    states = tuple(paths)
    edges = []
    for p in paths:
        for longer in extend(p):
            word = tuple(edge_list[i][1] for i in longer)
            edges.append((p, label(word), longer[1:]))
    return LabeledGraph(alphabet, states, tuple(edges))


def higher_block_presentation(p: ShiftPresentation, m: int) -> ShiftPresentation:
    """Presentation of the ``m``-block shift: symbols are overlapping ``m``-blocks."""
    base = determinize_and_minimize(p)
    blocks = [b for b in language_words(base, m)]
    alphabet = Alphabet(tuple(block_symbol(b) for b in blocks))
    graph = path_graph(base.graph, m, block_symbol, alphabet).essential().relabeled()
    name = f"{p.name}[{m}]" if p.name else ""
    return ShiftPresentation(graph, p.side, graph.is_deterministic, False, Provenance.EXPLICIT, name)


@dataclass(frozen=True)
class PowerRecoding:
    """``(X, sigma^m)`` presented over the alphabet of ``m``-blocks."""

    presentation: ShiftPresentation
    m: int
    blocks: dict[Symbol, Word] = field(compare=False)

    def encode(self, x: PointPresentation) -> PointPresentation:
        m = self.m
        to_symbol = {b: s for s, b in self.blocks.items()}

        def f(j):
            return to_symbol[tuple(x[j * m + k] for k in range(m))]

        if x.side is Side.ONE:
            hi = -(-x.hi // m)
            return PointPresentation.from_function(
                Side.ONE, f, 0, hi, 1, lcm(x.right.period, m) // m
            )
        lo = x.lo // m
        hi = -(-x.hi // m)
        return PointPresentation.from_function(
            Side.TWO,
            f,
            lo - 1,
            hi,
            lcm(x.left.period, m) // m,
            lcm(x.right.period, m) // m,
        )

    def decode(self, y: PointPresentation) -> PointPresentation:
        m = self.m

        def f(i):
            return self.blocks[y[i // m]][i % m]

        if y.side is Side.ONE:
            return PointPresentation.from_function(
                Side.ONE, f, 0, y.hi * m, 1, y.right.period * m
            )
        return PointPresentation.from_function(
            Side.TWO, f, y.lo * m, y.hi * m, y.left.period * m, y.right.period * m
        )


def power_recode(p: ShiftPresentation, m: int) -> PowerRecoding:
    """Present ``(X, sigma^m)`` by non-overlapping ``m``-blocks."""
    if m < 1:
        raise ValueError("m must be at least 1")
    base = determinize_and_minimize(p)
    g = base.graph
    blocks_seen: dict[Symbol, Word] = {}
    edges = []
    out = g.out_edges

    def walk(q, word, start):
        if len(word) == m:
            s = block_symbol(word)
            blocks_seen[s] = word
            edges.append((start, s, q))
            return
        for a, r in out[q]:
            walk(r, word + (a,), start)

    for q in g.states:
        walk(q, (), q)
    order = sorted(blocks_seen, key=lambda s: [p.alphabet.symbols.index(a) for a in blocks_seen[s]])
    alphabet = Alphabet(tuple(order))
    graph = LabeledGraph(alphabet, g.states, tuple(edges)).essential()
    pres = ShiftPresentation(
        graph, p.side, graph.is_deterministic, False, Provenance.EXPLICIT, f"{p.name}^{m}" if p.name else ""
    )
    return PowerRecoding(pres, m, blocks_seen)


# -- shift definition files --------------------------------------------------

_EDGE = re.compile(r"([^\s,]+?)\s*-\s*([^\s,]+?)\s*->\s*([^\s,]+)")


def shift_from_block(block: Block) -> ShiftPresentation:
    values: dict[str, tuple[str, Statement]] = {}
    for st in block.statements:
        key, value = split_assignment(st)
        if key in values:
            raise st.error(f"duplicate key {key!r}")
        values[key] = (value, st)
    if "alphabet" not in values:
        raise FormatError(f"shift {block.name!r} has no alphabet", block.line, block.col)
    try:
        alphabet = Alphabet(tuple(values["alphabet"][0].split()))
    except ValueError as exc:
        raise values["alphabet"][1].error(str(exc)) from None
    side = Side.TWO
    if "sided" in values:
        try:
            side = Side.parse(values["sided"][0])
        except ValueError as exc:
            raise values["sided"][1].error(str(exc)) from None
    kinds = [k for k in ("forbid", "regex", "graph") if k in values]
    if len(kinds) != 1:
        raise FormatError(
            f"shift {block.name!r} needs exactly one of forbid/regex/graph", block.line, block.col
        )
    unknown = set(values) - {"alphabet", "sided", "forbid", "regex", "graph"}
    if unknown:
        st = values[sorted(unknown)[0]][1]
        raise st.error(f"unknown key {sorted(unknown)[0]!r}")
    kind = kinds[0]
    value, st = values[kind]
    try:
        if kind == "forbid":
            words = [parse_word(s) for s in quoted_strings(st, value)]
            return sft_from_forbidden(alphabet, words, side, block.name)
        if kind == "regex":
            strings = quoted_strings(st, value)
            if len(strings) != 1:
                raise st.error("regex needs one quoted expression")
            return shift_from_regex(alphabet, strings[0], side, block.name)
        edges = []
        rest = value
        for m in _EDGE.finditer(value):
            edges.append((m.group(1), m.group(2), m.group(3)))
        rest = _EDGE.sub("", value).replace(",", " ").strip()
        if rest or not edges:
            raise st.error(f"cannot parse edge list near {rest or value!r}")
        return explicit_shift(alphabet, edges, side, block.name)
    except RegexSyntaxError as exc:
        raise FormatError(str(exc), st.line, st.col + value.find('"') + 1 + exc.position) from None
    except FormatError:
        raise
    except ValueError as exc:
        raise st.error(str(exc)) from None


def parse_shift_file(text: str) -> dict[str, ShiftPresentation]:
    """Parse every ``shift`` block in ``text``; other block kinds are ignored."""
    shifts = {}
    for block in parse_blocks(text):
        if block.kind != "shift":
            continue
        if block.name in shifts:
            raise FormatError(f"duplicate shift {block.name!r}", block.line, block.col)
        shifts[block.name] = shift_from_block(block)
    return shifts
