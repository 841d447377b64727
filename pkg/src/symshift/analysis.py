"""Decision procedures for the dynamical hypotheses of a presented shift."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import networkx as nx
import numpy as np

from .core import PeriodicWord, Side, Word, format_word, periodic_point
from .presentations import (
    EmptyShiftError,
    Provenance,
    ShiftPresentation,
    _stable_left,
    contains_point,
    determinize_and_minimize,
)

DEFAULT_PERIOD_BOUND = 8
MAX_ORBIT_PERIOD = 16


def _digraph(p: ShiftPresentation) -> nx.MultiDiGraph:
    return determinize_and_minimize(p).graph.to_networkx()


def is_transitive(p: ShiftPresentation) -> bool:
    """Strong connectivity of the minimal deterministic presentation.

    For reducible sofic presentations this answers for the minimal cover,
    which can differ from language transitivity.
    """
    g = _digraph(p)
    return g.number_of_nodes() > 0 and nx.is_strongly_connected(g)


def graph_period(p: ShiftPresentation) -> int:
    """gcd of cycle lengths of the (strongly connected) minimal presentation."""
    g = determinize_and_minimize(p).graph
    root = g.states[0]
    level = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for q in frontier:
            for _, r in g.out_edges[q]:
                if r not in level:
                    level[r] = level[q] + 1
                    nxt.append(r)
        frontier = nxt
    return reduce(math.gcd, (abs(level[q] + 1 - level[r]) for q, _, r in g.edges), 0)


def is_mixing(p: ShiftPresentation) -> bool:
    if not is_transitive(p):
        raise ValueError("mixing is only decided for transitive shifts")
    return graph_period(p) == 1


@dataclass(frozen=True)
class EntropyResult:
    """Topological entropy in bits with a certified bracket."""

    value: float
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _perron_bracket(a: np.ndarray, tol: float) -> tuple[float, float]:
    """Collatz-Wielandt bounds on the spectral radius of irreducible ``a``."""
    n = a.shape[0]
    b = a.astype(float) + np.eye(n)  # primitive, same Perron vector
    vals, vecs = np.linalg.eig(b)
    k = int(np.argmax(vals.real))
    v = np.abs(vecs[:, k].real)
    if not np.all(v > 0):
        v = np.ones(n)
    lo = hi = 0.0
    for _ in range(10000):
        bv = b @ v
        ratios = bv / v
        lo, hi = ratios.min(), ratios.max()
        if hi - lo < tol:
            break
        v = bv / bv.max()
    return lo - 1.0, hi - 1.0


def entropy(p: ShiftPresentation, tol: float = 1e-9) -> EntropyResult:
    """log2 of the Perron root of the minimal presentation's adjacency matrix.

    The root is bracketed component by component with Collatz-Wielandt
    bounds, refined by power iteration until the bracket (in bits) is
    narrower than ``tol``.
    """
    m = determinize_and_minimize(p)
    g = m.graph
    if not g.states:
        raise EmptyShiftError("entropy of the empty shift is undefined")
    nxg = nx.DiGraph()
    nxg.add_nodes_from(g.states)
    nxg.add_edges_from((q, r) for q, _, r in g.edges)
    best_lo, best_hi = 0.0, 0.0
    for comp in nx.strongly_connected_components(nxg):
        sub = g.restricted(comp)
        if not sub.edges:
            continue
        a = sub.adjacency_matrix()
        lo, hi = _perron_bracket(a, tol * 0.5)
        best_lo, best_hi = max(best_lo, lo), max(best_hi, hi)
    lo_bits = math.log2(best_lo) if best_lo > 0 else 0.0
    hi_bits = math.log2(best_hi) if best_hi > 0 else 0.0
    if hi_bits - lo_bits >= tol:
        raise ArithmeticError("entropy bracket did not converge")
    value = 0.5 * (lo_bits + hi_bits)
    if lo_bits == hi_bits:
        value = lo_bits
    return EntropyResult(value, lo_bits, hi_bits)


# -- periodic orbits --------------------------------------------------------


def enumerate_periodic_orbits(p: ShiftPresentation, n_max: int) -> list[PeriodicWord]:
    """Canonical representatives of all orbits with least period ``<= n_max``.

    Lyndon words are generated in lexicographic order (symbol strings
    compared as Python strings), pruning prefixes outside the language;
    each candidate ``w`` is kept when ``w^Z`` belongs to the shift.
    Orbits are sorted by period, then lexicographically.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > MAX_ORBIT_PERIOD:
        raise ValueError(f"period bound {n_max} exceeds {MAX_ORBIT_PERIOD}")
    m = determinize_and_minimize(p).with_side(Side.TWO)
    g = m.graph
    if not g.states:
        return []
    symbols = sorted(g.alphabet.symbols)
    k = len(symbols)
    found: list[PeriodicWord] = []
    a = [0] * (n_max + 1)
    sets = [g.all_states] + [frozenset()] * n_max

    def visit(t: int, period: int) -> None:
        s = g.step(sets[t - 1], symbols[a[t]])
        if not s:
            return
        sets[t] = s
        if period == t:
            w = tuple(symbols[a[i]] for i in range(1, t + 1))
            if contains_point(m, periodic_point(w)):
                found.append(PeriodicWord(w))
        if t < n_max:
            expand(t + 1, period)

    def expand(t: int, period: int) -> None:
        # prenecklace recursion: every prefix whose period equals its length is Lyndon
        base = a[t - period]
        a[t] = base
        visit(t, period)
        for j in range(base + 1, k):
            a[t] = j
            visit(t, t)

    expand(1, 1)
    found.sort(key=lambda w: (w.period, w.primitive))
    return found


def fixed_point_counts(p: ShiftPresentation, n_max: int) -> list[int]:
    """Number of ``sigma^n``-fixed points for ``n = 1..n_max``."""
    orbits = enumerate_periodic_orbits(p, n_max)
    return [sum(w.period for w in orbits if n % w.period == 0) for n in range(1, n_max + 1)]


def trace_counts(p: ShiftPresentation, n_max: int) -> list[int]:
    """``trace(A^n)`` of the presentation's own adjacency matrix.

    Equals the fixed-point counts when the labeling is one-to-one on
    bi-infinite paths, as for the de Bruijn presentation of an SFT.
    """
    a = p.graph.adjacency_matrix().astype(object)
    power = np.identity(a.shape[0], dtype=object)
    out = []
    for _ in range(n_max):
        power = power.dot(a)
        out.append(int(np.trace(power)))
    return out


# -- synchronization and isolation ------------------------------------------


def central_word(s: PeriodicWord, k: int) -> Word:
    """``s^Z`` restricted to ``[-k, k]`` (``s.primitive[0]`` at index 0)."""
    x = periodic_point(s)
    return x.window(-k, k)


def periodic_point_is_synchronizing(
    p: ShiftPresentation, s: PeriodicWord
) -> tuple[bool, int | None]:
    """Whether ``s^Z`` is a synchronizing point, with the splice radius.

    On the minimal deterministic presentation, the state set reached by the
    central word ``s[-k..k]`` shrinks as ``k`` grows and is eventually
    periodic; the point is synchronizing iff some such set is a singleton,
    and the first ``k`` where that happens is returned.
    """
    m = determinize_and_minimize(p).with_side(Side.TWO)
    if not contains_point(m, periodic_point(s)):
        raise ValueError(f"{format_word(s.primitive)}^Z is not in the shift")
    g = m.graph
    bound = (len(g.states) + 2) * s.period + 1
    for k in range(bound + 1):
        reached = g.step_word(g.all_states, central_word(s, k))
        if len(reached) == 1:
            return True, k
    return False, None


def is_synchronizing_word(p: ShiftPresentation, w: Word) -> bool:
    """All paths labeled ``w`` in the minimal presentation end at one state."""
    g = determinize_and_minimize(p).graph
    return len(g.step_word(g.all_states, w)) == 1


def _isolated_in(graph, w: Word) -> bool:
    stable = _stable_left(graph, w)
    if not stable:
        return False
    seen = set()
    stack = [(q, 0) for q in stable]
    n = len(w)
    while stack:
        q, i = stack.pop()
        if (q, i) in seen:
            continue
        seen.add((q, i))
        for a, r in graph.out_edges[q]:
            if a != w[i]:
                return False
            stack.append((r, (i + 1) % n))
    return True


def has_isolated_periodic_point_one_sided(
    p: ShiftPresentation, direction: str = "right", bound: int | None = None
) -> PeriodicWord | None:
    """An isolated periodic point of the right (or left) truncation.

    ``w^inf`` is isolated in the right truncation iff, after a long enough
    prefix ``w^k``, every continuation in the minimal presentation follows
    the cycle of ``w``.  An isolated point has period at most the number of
    states, so scanning up to that bound is complete.  The left truncation
    is handled on the edge-reversed graph.
    """
    if direction not in ("right", "left"):
        raise ValueError("direction is 'right' or 'left'")
    m = determinize_and_minimize(p).with_side(Side.TWO)
    g = m.graph
    if not g.states:
        return None
    if bound is None:
        bound = min(len(g.states), MAX_ORBIT_PERIOD)
    graph = g if direction == "right" else g.reversed()
    for s in enumerate_periodic_orbits(m, bound):
        w = s.primitive if direction == "right" else tuple(reversed(s.primitive))
        if _isolated_in(graph, w):
            return s
    return None


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of the transitivity, synchronization and isolation checks."""

    scope: Side
    period_bound: int
    transitive: bool
    mixing: bool
    every_periodic_synchronizing: bool
    non_synchronizing: PeriodicWord | None = None
    isolated_in_right_truncation: PeriodicWord | None = None
    isolated_in_left_truncation: PeriodicWord | None = None
    complete: bool = False
    sync_radii: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return (
            self.every_periodic_synchronizing
            and self.isolated_in_right_truncation is None
            and self.isolated_in_left_truncation is None
        )

    @property
    def reason(self) -> str | None:
        if not self.every_periodic_synchronizing:
            return "not_synchronizing"
        if self.isolated_in_right_truncation is not None:
            return "isolated_right"
        if self.isolated_in_left_truncation is not None:
            return "isolated_left"
        return None

    @property
    def witness(self) -> PeriodicWord | None:
        return (
            self.non_synchronizing
            or self.isolated_in_right_truncation
            or self.isolated_in_left_truncation
        )

    def records(self) -> list[str]:
        lines = []
        if self.holds:
            lines.append("hypotheses=pass")
        else:
            lines.append(
                f"hypotheses=fail witness={format_word(self.witness.primitive)} reason={self.reason}"
            )
        lines.append(f"scope={self.scope.value} period_bound={self.period_bound} complete={str(self.complete).lower()}")
        lines.append(f"transitive={str(self.transitive).lower()} mixing={str(self.mixing).lower()}")
        return lines


def check_theorem_hypotheses(
    p: ShiftPresentation, scope: Side | str = Side.TWO, period_bound: int = DEFAULT_PERIOD_BOUND
) -> HypothesisReport:
    """Check that periodic points synchronize and truncations have no isolated periodic points.

    The same conditions on the underlying two-sided shift are required in
    both scopes; ``scope`` only labels the report.  Synchronization is
    scanned up to ``period_bound``; for shifts of finite type that scan is
    exhaustive because every long word is synchronizing.  The isolation
    scan is always exhaustive.
    """
    if isinstance(scope, str):
        scope = Side.parse(scope)
    m = determinize_and_minimize(p).with_side(Side.TWO)
    transitive = is_transitive(m)
    mixing = transitive and graph_period(m) == 1
    bad = None
    radii = {}
    for s in enumerate_periodic_orbits(m, period_bound):
        ok, ell = periodic_point_is_synchronizing(m, s)
        if not ok:
            bad = s
            break
        radii[s.canonical] = ell
    right = has_isolated_periodic_point_one_sided(m, "right")
    left = has_isolated_periodic_point_one_sided(m, "left")
    complete = p.provenance is Provenance.FORBIDDEN
    return HypothesisReport(
        scope,
        period_bound,
        transitive,
        mixing,
        bad is None,
        bad,
        right,
        left,
        complete,
        radii,
    )
