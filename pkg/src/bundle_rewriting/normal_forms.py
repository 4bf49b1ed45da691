"""Irreducible-word languages: automata, growth, and the two-bundle block structure.

For a complete system the irreducible words are normal forms, in bijection
with group elements, so counting accepted words by length gives the growth
series and comparing normal forms decides the word problem.

For two circle bundles glued along one edge, with vertex groups ``A`` (blue,
fiber ``x``) and ``C`` (red, fiber ``y``) meeting in ``X = <x> x <y>``, every
irreducible word splits as ``u_1 v_1 w_1 ... u_k v_k w_k`` where ``u_i`` is a
maximal A/X coset word, ``v_i = y^m x^n`` and ``w_i`` is a maximal X\\C coset
word. :func:`block_decompose` finds that split, and :func:`ac_length_table`
computes AC-lengths by search in the group so the two can be compared.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

from .bundles import BLUE, BundleGraph, Coloring, a_, b_, validate_and_color, x_
from .errors import DecompositionError, RewritingError
from .knuth_bendix import check_complete
from .system import DEFAULT_STEP_CAP, RewritingSystem, is_irreducible, reduce
from .words import Letter, Word, format_word


class IrreducibleAutomaton:
    """DFA accepting exactly the words that contain no left-hand side as a factor.

    Built from the rule system's pattern automaton: every state that
    completes a left-hand side is redirected to a rejecting sink.
    """

    def __init__(self, sys: RewritingSystem) -> None:
        aut = sys.automaton
        self.letters = aut.letters
        self.index = aut.index
        n = aut.n_states
        self.sink = n
        bad = [bool(outs) for outs in aut.suffix_out]
        k = len(self.letters)
        self.delta = [[self.sink if bad[t] else t for t in row] for row in aut.delta]
        self.delta.append([self.sink] * k)
        self.accepting = [not b for b in bad] + [False]
        self.start = 0

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def accepts(self, w: Word) -> bool:
        s = self.start
        for z in w:
            i = self.index.get(z)
            if i is None:
                return False
            s = self.delta[s][i]
        return self.accepting[s]

    def count_by_length(self, max_len: int) -> list[int]:
        counts = [1]
        layer = {self.start: 1}
        for _ in range(max_len):
            nxt: dict[int, int] = {}
            for s, c in layer.items():
                for t in self.delta[s]:
                    if self.accepting[t]:
                        nxt[t] = nxt.get(t, 0) + c
            layer = nxt
            counts.append(sum(layer.values()))
        return counts

    def enumerate(self, max_len: int):
        """Yield every accepted word of length <= ``max_len``, shortest first."""
        layer = [((), self.start)]
        yield ()
        for _ in range(max_len):
            nxt = []
            for w, s in layer:
                for i, t in enumerate(self.delta[s]):
                    if self.accepting[t]:
                        nxt.append((w + (self.letters[i],), t))
            for w, _ in nxt:
                yield w
            layer = nxt


def build_automaton(sys: RewritingSystem) -> IrreducibleAutomaton:
    return IrreducibleAutomaton(sys)


def enumerate_irreducible(sys: RewritingSystem, max_len: int):
    return build_automaton(sys).enumerate(max_len)


@dataclass(frozen=True)
class GrowthSeries:
    counts: tuple[int, ...]
    verified: bool
    warning: str | None = None

    def lines(self) -> list[str]:
        return [f"{n}\t{c}" for n, c in enumerate(self.counts)]


def growth_series(sys: RewritingSystem, max_len: int, verified: bool | None = None) -> GrowthSeries:
    """Number of irreducible words of each length ``0..max_len``.

    These count group elements only when the system is complete; unless
    ``verified`` is given, completeness is checked first and a warning is
    attached if it fails.
    """
    if verified is None:
        verified = check_complete(sys).complete
    warning = None
    if not verified:
        warning = "system is not verified complete; counts are irreducible words, not group elements"
        warnings.warn(warning, stacklevel=2)
    counts = build_automaton(sys).count_by_length(max_len)
    return GrowthSeries(tuple(counts), verified, warning)


def words_equal(w1: Word, w2: Word, sys: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Decide ``w1 = w2`` in the group by comparing normal forms (system must be complete)."""
    return reduce(w1, sys, step_cap) == reduce(w2, sys, step_cap)


# -- two-bundle structure -------------------------------------------------


@dataclass(frozen=True)
class TwoBundleLayout:
    """Which generators belong to which side of a two-vertex amalgam."""

    a_side: frozenset  # surface generators of the blue vertex
    c_side: frozenset  # surface generators of the red vertex
    x: str  # blue fiber
    y: str  # red fiber

    @classmethod
    def from_graph(
        cls,
        graph: BundleGraph,
        coloring: Coloring | None = None,
        names: dict[str, str] | None = None,
    ) -> TwoBundleLayout:
        coloring = coloring if coloring is not None else validate_and_color(graph)
        if len(graph.vertices) != 2 or len(graph.edges) != 1 or graph.loops:
            raise RewritingError("block structure needs two vertices, one edge, no loops")
        names = names or {}
        nm = lambda g: names.get(g, g)  # noqa: E731
        (e,) = graph.edges
        v = graph.vertex(coloring.initial(e))
        w = graph.vertex(coloring.terminal(e))
        assert coloring.color(v.id) == BLUE
        a_side = {nm(z(v.id, j).generator) for j in range(1, v.genus + 1) for z in (a_, b_)}
        c_side = {nm(z(w.id, j).generator) for j in range(1, w.genus + 1) for z in (a_, b_)}
        return cls(frozenset(a_side), frozenset(c_side), nm(x_(v.id).generator), nm(x_(w.id).generator))

    def a_generators(self) -> frozenset:
        """Generators of the vertex group A (its fiber and the edge fiber included)."""
        return self.a_side | {self.x, self.y}

    def c_generators(self) -> frozenset:
        return self.c_side | {self.x, self.y}


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[Word, Word, Word], ...]

    @property
    def k(self) -> int:
        return len(self.blocks)

    def word(self) -> Word:
        out: Word = ()
        for u, v, w in self.blocks:
            out += u + v + w
        return out

    def __str__(self) -> str:
        if not self.blocks:
            return "(empty)"
        return " ".join(
            f"[{format_word(u, '')} | {format_word(v, '')} | {format_word(w, '')}]"
            for u, v, w in self.blocks
        )


def in_coset_a(u: Word, lay: TwoBundleLayout) -> bool:
    """Letters from ``{a_i, b_i, y}`` and not ending in ``y``."""
    ok = lay.a_side | {lay.y}
    return all(z.generator in ok for z in u) and (not u or u[-1].generator != lay.y)


def in_coset_c(w: Word, lay: TwoBundleLayout) -> bool:
    """Letters from ``{c_i, d_i, x}`` and not beginning with ``x``."""
    ok = lay.c_side | {lay.x}
    return all(z.generator in ok for z in w) and (not w or w[0].generator != lay.x)


def in_fiber_torus(v: Word, lay: TwoBundleLayout) -> bool:
    """``y^m x^n`` with no cancelling pairs."""
    i = 0
    for gen in (lay.y, lay.x):
        sign = None
        while i < len(v) and v[i].generator == gen:
            if sign is not None and v[i].sign != sign:
                return False
            sign = v[i].sign
            i += 1
    return i == len(v)


def block_decompose(theta: Word, sys: RewritingSystem, layout: TwoBundleLayout) -> BlockDecomposition:
    """Greedy left-to-right split of an irreducible word into ``(u, v, w)`` blocks."""
    theta = tuple(theta)
    if not is_irreducible(theta, sys):
        raise DecompositionError(f"{format_word(theta)} is not irreducible")
    a_run = layout.a_side | {layout.y}
    c_run = layout.c_side | {layout.x}
    n = len(theta)
    i = 0
    blocks = []
    while i < n:
        j = i
        while j < n and theta[j].generator in a_run:
            j += 1
        k = j
        while k > i and theta[k - 1].generator == layout.y:
            k -= 1
        m = j
        while m < n and theta[m].generator == layout.x:
            m += 1
        p = m
        if p < n and theta[p].generator in layout.c_side:
            while p < n and theta[p].generator in c_run:
                p += 1
        if p == i:
            raise DecompositionError(
                f"cannot parse {format_word(theta)} at position {i} ({theta[i]})"
            )
        u, v, w = theta[i:k], theta[k:m], theta[m:p]
        if not (in_coset_a(u, layout) and in_fiber_torus(v, layout) and in_coset_c(w, layout)):
            raise DecompositionError(f"block {format_word(theta[i:p])} violates the block languages")
        blocks.append((u, v, w))
        i = p
    return BlockDecomposition(tuple(blocks))


class _Coded:
    """Normal-form arithmetic on words encoded as strings, one char per letter."""

    def __init__(self, sys: RewritingSystem) -> None:
        if not sys.is_left_reduced:
            raise RewritingError("coded arithmetic needs a left-reduced system")
        aut = sys.automaton
        self.letters = aut.letters
        self.index = aut.index
        self.delta = aut.delta
        self.first = aut.first_match
        self.lhs_len = [len(r.lhs) for r in sys.rules]
        self.rhs = [[aut.index[z] for z in r.rhs] for r in sys.rules]

    def encode(self, w: Word) -> str:
        return "".join(chr(self.index[z]) for z in w)

    def decode(self, s: str) -> Word:
        return tuple(self.letters[ord(c)] for c in s)

    def state(self, s: str) -> int:
        st = 0
        for c in s:
            st = self.delta[st][ord(c)]
        return st

    def append(self, s: str, st: int, c: int, step_cap: int = 100_000) -> tuple[str, int]:
        t = self.delta[st][c]
        if self.first[t] < 0:
            return s + chr(c), t
        pending = [c] + [ord(ch) for ch in reversed(s)]
        out: list[int] = []
        states = [0]
        steps = 0
        delta, first = self.delta, self.first
        while pending:
            z = pending.pop()
            q = delta[states[-1]][z]
            out.append(z)
            states.append(q)
            p = first[q]
            if p >= 0:
                steps += 1
                if steps > step_cap:
                    raise RewritingError("reduction cap exceeded in AC-length search")
                n = self.lhs_len[p]
                del out[-n:]
                del states[-n:]
                pending.extend(reversed(self.rhs[p]))
        return "".join(map(chr, out)), states[-1]


def ac_length_table(
    sys: RewritingSystem,
    layout: TwoBundleLayout,
    length_cap: int,
    targets: set | None = None,
) -> dict[Word, int]:
    """Minimal number of ``A C`` factor pairs for every element reached.

    Breadth-first search over ``(normal form, phase)``: in phase A the word
    is multiplied on the right by generators of A, in phase C by generators
    of C; switching A to C is free and C to A opens a new pair. Intermediate
    normal forms are confined to length ``<= length_cap``, so a value is the
    minimum over products whose partial products stay in that ball.

    With ``targets`` the search stops once all of them are settled and only
    their entries are returned.
    """
    code = _Coded(sys)
    a_gens = [code.index[Letter(g, e)] for g in sorted(layout.a_generators()) for e in (1, -1)]
    c_gens = [code.index[Letter(g, e)] for g in sorted(layout.c_generators()) for e in (1, -1)]
    gens = (a_gens, c_gens)
    want = None if targets is None else {code.encode(t) for t in targets}

    dist: dict[tuple[str, int], int] = {("", 0): 1}
    state_of = {"": 0}
    best: dict[str, int] = {"": 0}
    dq = deque([("", 0, 1)])
    settled = set()
    while dq:
        s, phase, d = dq.popleft()
        if dist.get((s, phase), d) < d:
            continue
        if s not in best or d < best[s]:
            best[s] = d
        if want is not None and s in want and s not in settled:
            settled.add(s)
            if len(settled) == len(want):
                break
        st = state_of[s]
        for c in gens[phase]:
            s2, st2 = code.append(s, st, c)
            if len(s2) > length_cap:
                continue
            key = (s2, phase)
            if dist.get(key, d + 1) > d:
                dist[key] = d
                state_of[s2] = st2
                dq.appendleft((s2, phase, d))
        other = 1 - phase
        cost = d if phase == 0 else d + 1
        key = (s, other)
        if dist.get(key, cost + 1) > cost:
            dist[key] = cost
            if cost == d:
                dq.appendleft((s, other, cost))
            else:
                dq.append((s, other, cost))
    best[""] = 0
    if want is not None:
        return {code.decode(s): best[s] for s in want if s in best}
    return {code.decode(s): d for s, d in best.items()}


def ac_length_oracle(
    g_word: Word, sys: RewritingSystem, layout: TwoBundleLayout, ball_radius: int = 2
) -> int | None:
    """AC-length of the element ``g_word`` by bounded search, or ``None`` if not reached.

    Partial products are confined to normal forms at most ``ball_radius``
    letters longer than the target's. Desk scale only.
    """
    if not 0 <= ball_radius <= 4:
        raise ValueError("ball_radius must be between 0 and 4")
    target = reduce(g_word, sys)
    if not target:
        return 0
    table = ac_length_table(sys, layout, len(target) + ball_radius, {target})
    return table.get(target)
