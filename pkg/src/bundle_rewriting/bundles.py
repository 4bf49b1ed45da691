"""Graphs of circle bundles and the rewriting systems they generate.

A graph is a set of vertices (each a circle bundle over a punctured surface
of genus ``g_v``), non-loop edges forming a tree, and loops. Every gluing is
a twist matrix ``(1 n; 0 1)``, so an edge carries one integer ``n_e`` and a
loop one integer ``m_l``.

Generated letter tokens are ``x.<v>``, ``a.<v>.<j>``, ``b.<v>.<j>`` for a
vertex ``v`` and ``r.<l>``, ``s.<l>``, ``t.<l>`` for a loop ``l``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DisconnectedGraphError,
    GraphError,
    NotATreeError,
    ParseError,
    UnsupportedGenusError,
    UnsupportedGluingError,
)
from .system import RewritingSystem, Rule
from .words import Letter, Word, commutator, formal_inverse, power

BLUE = "blue"
RED = "red"

_ID = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int


@dataclass(frozen=True)
class Edge:
    id: str
    a: str
    b: str
    twist: int = 0


@dataclass(frozen=True)
class Loop:
    id: str
    vertex: str
    twist: int = 0


def twist_from_matrix(k: int, n: int, k2: int, n2: int) -> int:
    """Accept only the upper-triangular unipotent gluing ``(1 n; 0 1)``."""
    if (k, k2, n2) != (1, 0, 1):
        raise UnsupportedGluingError(
            f"gluing matrix ({k} {n}; {k2} {n2}) is not of the form (1 n; 0 1); "
            "only (1 n; 0 1) gluings are supported"
        )
    return n


@dataclass(frozen=True)
class BundleGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    loops: tuple[Loop, ...] = ()

    def __post_init__(self) -> None:
        for name in ("vertices", "edges", "loops"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise GraphError(f"no vertex {vid!r}")


@dataclass(frozen=True)
class Coloring:
    colors: dict
    # edge id -> (initial/blue vertex, terminal/red vertex)
    orientation: dict

    def color(self, vid: str) -> str:
        return self.colors[vid]

    def initial(self, e: Edge) -> str:
        return self.orientation[e.id][0]

    def terminal(self, e: Edge) -> str:
        return self.orientation[e.id][1]


# -- letters ---------------------------------------------------------------


def x_(v: str) -> Letter:
    return Letter(f"x.{v}")


def a_(v: str, j: int) -> Letter:
    return Letter(f"a.{v}.{j}")


def b_(v: str, j: int) -> Letter:
    return Letter(f"b.{v}.{j}")


def r_(l: str) -> Letter:
    return Letter(f"r.{l}")


def s_(l: str) -> Letter:
    return Letter(f"s.{l}")


def t_(l: str) -> Letter:
    return Letter(f"t.{l}")


def generator_tokens(graph: BundleGraph) -> tuple[str, ...]:
    """The generating set ``S``: per vertex ``x, a_1, b_1, ...``, then per loop ``r, s, t``."""
    out = []
    for v in graph.vertices:
        out.append(x_(v.id).generator)
        for j in range(1, v.genus + 1):
            out.extend((a_(v.id, j).generator, b_(v.id, j).generator))
    for l in graph.loops:
        out.extend((r_(l.id).generator, s_(l.id).generator, t_(l.id).generator))
    return tuple(out)


# -- validation ------------------------------------------------------------


def validate_and_color(graph: BundleGraph, root_color: str = BLUE) -> Coloring:
    """Check the graph and 2-color it breadth-first from the first vertex.

    ``root_color`` only matters for a single-vertex graph; with edges present,
    the first declared vertex is still the root and the colors alternate.
    """
    if root_color not in (BLUE, RED):
        raise ValueError(f"root_color must be {BLUE!r} or {RED!r}")
    if not graph.vertices:
        raise GraphError("graph has no vertices")
    ids = [v.id for v in graph.vertices]
    for name in ids + [e.id for e in graph.edges] + [l.id for l in graph.loops]:
        if not _ID.match(name):
            raise GraphError(f"invalid identifier {name!r}")
    if len(set(ids)) != len(ids):
        raise GraphError("duplicate vertex id")
    edge_ids = [e.id for e in graph.edges] + [l.id for l in graph.loops]
    if len(set(edge_ids)) != len(edge_ids):
        raise GraphError("duplicate edge or loop id")
    for v in graph.vertices:
        if v.genus < 1:
            raise UnsupportedGenusError(
                f"vertex {v.id} has genus {v.genus}; genus must be at least 1"
            )
    known = set(ids)
    for e in graph.edges:
        for end in (e.a, e.b):
            if end not in known:
                raise GraphError(f"edge {e.id} references unknown vertex {end!r}")
        if e.a == e.b:
            raise GraphError(f"edge {e.id} has equal endpoints; declare it as a loop")
    for l in graph.loops:
        if l.vertex not in known:
            raise GraphError(f"loop {l.id} references unknown vertex {l.vertex!r}")

    parent = {v: v for v in ids}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    adj: dict[str, list[str]] = {v: [] for v in ids}
    for e in graph.edges:
        ra, rb = find(e.a), find(e.b)
        if ra == rb:
            raise NotATreeError(f"not a tree after loop removal: edge {e.id} closes a cycle")
        parent[ra] = rb
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)

    other = {BLUE: RED, RED: BLUE}
    colors = {ids[0]: root_color if not graph.edges else BLUE}
    queue = deque([ids[0]])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in colors:
                colors[w] = other[colors[v]]
                queue.append(w)
    missing = [v for v in ids if v not in colors]
    if missing:
        raise DisconnectedGraphError(f"graph is disconnected: {missing[0]} is unreachable")

    orientation = {}
    for e in graph.edges:
        if colors[e.a] == BLUE:
            orientation[e.id] = (e.a, e.b)
        else:
            orientation[e.id] = (e.b, e.a)
    return Coloring(colors, orientation)


def _coloring(graph: BundleGraph, coloring: Coloring | None) -> Coloring:
    return coloring if coloring is not None else validate_and_color(graph)


def _check_color(coloring: Coloring, vid: str, want: str) -> None:
    if coloring.color(vid) != want:
        raise GraphError(f"vertex {vid} is {coloring.color(vid)}, expected {want}")


def n_w(graph: BundleGraph, coloring: Coloring | None, w: str) -> int:
    """Sum of the twists ``n_e`` over edges terminating at the red vertex ``w``."""
    coloring = _coloring(graph, coloring)
    _check_color(coloring, w, RED)
    incident = [e for e in graph.edges if coloring.terminal(e) == w]
    # only a single-vertex graph colored red by choice has a red vertex with no edge
    assert incident or not graph.edges, "a red vertex in a tree always has an incoming edge"
    return sum(e.twist for e in incident)


def lambda_word(graph: BundleGraph, coloring: Coloring | None, v: str) -> Word:
    coloring = _coloring(graph, coloring)
    _check_color(coloring, v, BLUE)
    out: list[Letter] = [x_(coloring.terminal(e)) for e in graph.edges if coloring.initial(e) == v]
    for l in graph.loops:
        if l.vertex == v:
            out.extend((r_(l.id), s_(l.id)))
    return tuple(out)


def omega_word(graph: BundleGraph, coloring: Coloring | None, w: str) -> Word:
    coloring = _coloring(graph, coloring)
    _check_color(coloring, w, RED)
    out: list[Letter] = [x_(coloring.initial(e)) for e in graph.edges if coloring.terminal(e) == w]
    for l in graph.loops:
        if l.vertex == w:
            out.extend((r_(l.id), s_(l.id)))
    return tuple(out)


def _commutators_desc(v: Vertex) -> Word:
    # prod_{j=g}^{2} [b_j, a_j]
    out: Word = ()
    for j in range(v.genus, 1, -1):
        out += commutator((b_(v.id, j),), (a_(v.id, j),))
    return out


def _commutators_asc(v: Vertex) -> Word:
    # prod_{j=2}^{g} [a_j, b_j]
    out: Word = ()
    for j in range(2, v.genus + 1):
        out += commutator((a_(v.id, j),), (b_(v.id, j),))
    return out


def _amalgam_rules(v: Vertex, boundary: Word, fiber_shift: Word, tag: str) -> list[Rule]:
    """The four surface rules at one vertex.

    ``boundary`` is Lambda_v or Omega_w; ``fiber_shift`` is ``x_w^{n_w}`` at a
    red vertex and empty at a blue one.
    """
    a1, b1 = a_(v.id, 1), b_(v.id, 1)
    ai, bi = a1.inverse, b1.inverse
    desc, asc = _commutators_desc(v), _commutators_asc(v)
    up, down = fiber_shift, formal_inverse(fiber_shift)
    bd = boundary + desc
    return [
        Rule((a1, b1), down + bd + (b1, a1), tag),
        Rule((a1, bi), up + (bi,) + asc + formal_inverse(boundary) + (a1,), tag),
        Rule((ai,) + bd + (b1,), up + (b1, ai), tag),
        Rule((ai, bi), down + (bi, ai) + bd, tag),
    ]


def _commute(left: Letter, right: Letter, tag: str) -> list[Rule]:
    """``left^e right^d -> right^d left^e`` for all four sign choices."""
    out = []
    for e in (1, -1):
        for d in (1, -1):
            p, q = Letter(left.generator, e), Letter(right.generator, d)
            out.append(Rule((p, q), (q, p), tag))
    return out


def _blue_hnn(k: Loop, x: Letter) -> list[Rule]:
    t, r, s, m = t_(k.id), r_(k.id), s_(k.id), k.twist
    T, R, S, X = t.inverse, r.inverse, s.inverse, x.inverse
    tag = "blue-HNN"
    return [
        Rule((x, t), (t, r), tag),
        Rule((X, t), (t, R), tag),
        Rule((r, T), (T, x), tag),
        Rule((R, T), (T, X), tag),
        Rule((s, t), (t,) + power(r, -m) + (x,), tag),
        Rule((S, t), (t,) + power(r, m) + (X,), tag),
        Rule((x, T), (T, s) + power(x, m), tag),
        Rule((X, T), (T, S) + power(x, -m), tag),
    ]


def _red_hnn(l: Loop, x: Letter) -> list[Rule]:
    t, r, s, m = t_(l.id), r_(l.id), s_(l.id), l.twist
    T, R, S, X = t.inverse, r.inverse, s.inverse, x.inverse
    tag = "red-HNN"
    return [
        Rule((t, r), (x, t), tag),
        Rule((t, R), (X, t), tag),
        Rule((T, x), (r, T), tag),
        Rule((T, X), (R, T), tag),
        Rule((t, x), power(x, m) + (s, t), tag),
        Rule((t, X), power(x, -m) + (S, t), tag),
        Rule((T, s), (x,) + power(r, -m) + (T,), tag),
        Rule((T, S), (X,) + power(r, m) + (T,), tag),
    ]


def generate_system(graph: BundleGraph, coloring: Coloring | None = None) -> RewritingSystem:
    """The full rule set R for the graph, every rule tagged with its family."""
    coloring = _coloring(graph, coloring)
    color = coloring.color
    blue = [v for v in graph.vertices if color(v.id) == BLUE]
    red = [v for v in graph.vertices if color(v.id) == RED]
    blue_loops = [l for l in graph.loops if color(l.vertex) == BLUE]
    red_loops = [l for l in graph.loops if color(l.vertex) == RED]
    gens = generator_tokens(graph)

    rules: list[Rule] = []
    for g in gens:
        z = Letter(g)
        rules.append(Rule((z, z.inverse), (), "inverse-cancellation"))
        rules.append(Rule((z.inverse, z), (), "inverse-cancellation"))

    for v in blue:
        for j in range(1, v.genus + 1):
            rules += _commute(x_(v.id), a_(v.id, j), "blue-vertex")
            rules += _commute(x_(v.id), b_(v.id, j), "blue-vertex")
        for k in blue_loops:
            if k.vertex == v.id:
                rules += _commute(x_(v.id), r_(k.id), "blue-vertex")
                rules += _commute(x_(v.id), s_(k.id), "blue-vertex")

    for w in red:
        for j in range(1, w.genus + 1):
            rules += _commute(a_(w.id, j), x_(w.id), "red-vertex")
            rules += _commute(b_(w.id, j), x_(w.id), "red-vertex")
        for l in red_loops:
            if l.vertex == w.id:
                rules += _commute(r_(l.id), x_(w.id), "red-vertex")
                rules += _commute(s_(l.id), x_(w.id), "red-vertex")

    for e in graph.edges:
        rules += _commute(x_(coloring.initial(e)), x_(coloring.terminal(e)), "edge")

    for v in blue:
        rules += _amalgam_rules(v, lambda_word(graph, coloring, v.id), (), "blue-amalgam")
    for w in red:
        shift = power(x_(w.id), n_w(graph, coloring, w.id))
        rules += _amalgam_rules(w, omega_word(graph, coloring, w.id), shift, "red-amalgam")

    for k in blue_loops:
        rules += _blue_hnn(k, x_(k.vertex))
    for l in red_loops:
        rules += _red_hnn(l, x_(l.vertex))

    return RewritingSystem(gens, tuple(rules))


@dataclass(frozen=True)
class SystemPartition:
    """The sub-alphabet A' (blue-loop stable letters removed) and the system R' over it."""

    restricted_alphabet: frozenset
    excluded_letters: frozenset  # generator tokens whose letters lie in A - A'
    restricted_system: RewritingSystem

    def is_excluded(self, x: Letter) -> bool:
        return x.generator in self.excluded_letters


def generate_restricted(
    graph: BundleGraph, coloring: Coloring | None = None
) -> tuple[RewritingSystem, SystemPartition]:
    coloring = _coloring(graph, coloring)
    full = generate_system(graph, coloring)
    excluded = frozenset(
        t_(l.id).generator for l in graph.loops if coloring.color(l.vertex) == BLUE
    )
    kept = [
        r
        for r in full.rules
        if r.tag != "blue-HNN" and not any(z.generator in excluded for z in r.lhs + r.rhs)
    ]
    alphabet = tuple(g for g in full.alphabet if g not in excluded)
    restricted = RewritingSystem(alphabet, tuple(kept))
    return restricted, SystemPartition(frozenset(alphabet), excluded, restricted)


def defining_relators(graph: BundleGraph, coloring: Coloring | None = None) -> list[Word]:
    """Relators of the graph-of-groups presentation, after eliminating p_e and q_e.

    Each returned word equals the identity in the group, so it must reduce to
    the empty word under :func:`generate_system`.
    """
    coloring = _coloring(graph, coloring)
    out: list[Word] = []

    def p(e: Edge) -> Word:
        return (x_(coloring.terminal(e)),)

    def q(e: Edge) -> Word:
        return (x_(coloring.initial(e)),) + power(x_(coloring.terminal(e)), -e.twist)

    for v in graph.vertices:
        boundary: Word = ()
        for e in graph.edges:
            if coloring.initial(e) == v.id:
                boundary += p(e)
        for e in graph.edges:
            if coloring.terminal(e) == v.id:
                boundary += q(e)
        for l in graph.loops:
            if l.vertex == v.id:
                boundary += (r_(l.id), s_(l.id))
        surface: Word = ()
        for j in range(1, v.genus + 1):
            surface += commutator((a_(v.id, j),), (b_(v.id, j),))
        out.append(boundary + formal_inverse(surface))

        xv = (x_(v.id),)
        for j in range(1, v.genus + 1):
            out.append(commutator(xv, (a_(v.id, j),)))
            out.append(commutator(xv, (b_(v.id, j),)))
        for l in graph.loops:
            if l.vertex == v.id:
                out.append(commutator(xv, (r_(l.id),)))
                out.append(commutator(xv, (s_(l.id),)))

    for e in graph.edges:
        xi, xt = x_(coloring.initial(e)), x_(coloring.terminal(e))
        out.append(commutator((xi,), (xt,)))
        # x_v = q_e x_w^{n_e} and p_e = x_w
        out.append(q(e) + power(xt, e.twist) + (xi.inverse,))
        out.append(p(e) + (xt.inverse,))

    for l in graph.loops:
        t, x, r, s = t_(l.id), x_(l.vertex), r_(l.id), s_(l.id)
        out.append((t, x, t.inverse) + power(x, -l.twist) + (s.inverse,))
        out.append((t, r, t.inverse, x.inverse))
    return out


# -- construction helpers and file format ----------------------------------


def two_bundle_graph(g: int, h: int, n: int) -> BundleGraph:
    """Two circle bundles ``v`` (genus g) and ``w`` (genus h) glued along one edge."""
    return BundleGraph((Vertex("v", g), Vertex("w", h)), (Edge("e", "v", "w", n),))


def classic_names(graph: BundleGraph, coloring: Coloring | None = None) -> dict[str, str]:
    """Short names for a two-vertex, loop-free graph.

    The blue vertex gets ``a1.., b1.., x``, the red one ``c1.., d1.., y``.
    """
    coloring = _coloring(graph, coloring)
    if len(graph.vertices) != 2 or graph.loops or len(graph.edges) != 1:
        raise GraphError("classic names need exactly two vertices, one edge and no loops")
    (e,) = graph.edges
    v, w = graph.vertex(coloring.initial(e)), graph.vertex(coloring.terminal(e))
    names = {x_(v.id).generator: "x", x_(w.id).generator: "y"}
    for j in range(1, v.genus + 1):
        names[a_(v.id, j).generator] = f"a{j}"
        names[b_(v.id, j).generator] = f"b{j}"
    for j in range(1, w.genus + 1):
        names[a_(w.id, j).generator] = f"c{j}"
        names[b_(w.id, j).generator] = f"d{j}"
    return names


def rename(sys: RewritingSystem, names: dict[str, str]) -> RewritingSystem:
    def conv(w: Word) -> Word:
        return tuple(Letter(names.get(z.generator, z.generator), z.sign) for z in w)

    return RewritingSystem(
        tuple(names.get(g, g) for g in sys.alphabet),
        tuple(Rule(conv(r.lhs), conv(r.rhs), r.tag) for r in sys.rules),
    )


def _int(tok: str, lineno: int, path: str | None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, path) from None


def _twist(parts: list[str], key: str, lineno: int, path: str | None) -> int:
    if len(parts) == 2 and parts[0] == key:
        return _int(parts[1], lineno, path)
    if len(parts) == 5 and parts[0] == "matrix":
        k, n, k2, n2 = (_int(p, lineno, path) for p in parts[1:])
        return twist_from_matrix(k, n, k2, n2)
    raise ParseError(f"expected '{key} <int>' or 'matrix k n k2 n2'", lineno, path)


def loads_graph(text: str, path: str | None = None) -> BundleGraph:
    """Parse the ``.gob`` format.

    ::

        vertex <id> genus <g>
        edge <id> <vertexA> <vertexB> n <int>      # or: matrix 1 <n> 0 1
        loop <id> <vertex> m <int>                 # or: matrix 1 <m> 0 1
    """
    vertices, edges, loops = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "vertex" and len(parts) == 4 and parts[2] == "genus":
                vertices.append(Vertex(parts[1], _int(parts[3], lineno, path)))
            elif kind == "edge" and len(parts) >= 4:
                edges.append(Edge(parts[1], parts[2], parts[3], _twist(parts[4:], "n", lineno, path)))
            elif kind == "loop" and len(parts) >= 3:
                loops.append(Loop(parts[1], parts[2], _twist(parts[3:], "m", lineno, path)))
            else:
                raise ParseError(f"cannot parse {line!r}", lineno, path)
        except UnsupportedGluingError as exc:
            raise UnsupportedGluingError(f"{path + ':' if path else ''}{lineno}: {exc}") from None
    return BundleGraph(tuple(vertices), tuple(edges), tuple(loops))


def load_graph(path: str | Path) -> BundleGraph:
    p = Path(path)
    return loads_graph(p.read_text(encoding="utf-8"), str(p))


def dumps_graph(graph: BundleGraph) -> str:
    lines = [f"vertex {v.id} genus {v.genus}" for v in graph.vertices]
    lines += [f"edge {e.id} {e.a} {e.b} n {e.twist}" for e in graph.edges]
    lines += [f"loop {l.id} {l.vertex} m {l.twist}" for l in graph.loops]
    return "\n".join(lines) + "\n"


# -- fixtures --------------------------------------------------------------


def _cancellations(gens) -> list[Rule]:
    out = []
    for g in gens:
        z = Letter(g)
        out += [Rule((z, z.inverse), (), "inverse-cancellation"), Rule((z.inverse, z), (), "inverse-cancellation")]
    return out


def trivial_group() -> RewritingSystem:
    e = Letter("e")
    return RewritingSystem(("e",), (Rule((e,), (), "other"), Rule((e.inverse,), (), "other")))


def free_abelian(names) -> RewritingSystem:
    """``Z^n`` on the given generators; ``x_i x_j -> x_j x_i`` whenever ``i > j``."""
    names = tuple(names)
    rules = _cancellations(names)
    for i, gi in enumerate(names):
        for j, gj in enumerate(names):
            if i > j:
                rules += _commute(Letter(gi), Letter(gj), "other")
    return RewritingSystem(names, tuple(rules))


def surface_bundle_fixture(genus: int, root_color: str = BLUE) -> RewritingSystem:
    """The one-vertex, loop-free degenerate case: a closed surface group times Z."""
    graph = BundleGraph((Vertex("v", genus),))
    return generate_system(graph, validate_and_color(graph, root_color))


def fixtures() -> dict[str, RewritingSystem]:
    return {
        "trivial": trivial_group(),
        "Z": free_abelian(("x",)),
        # x has the larger index, so x y -> y x
        "Z2": free_abelian(("y", "x")),
        "Z3": free_abelian(("x1", "x2", "x3")),
        "surface-bundle-1": surface_bundle_fixture(1),
        "surface-bundle-2": surface_bundle_fixture(2),
        "two-bundle": rename(generate_system(two_bundle_graph(1, 1, 0)), classic_names(two_bundle_graph(1, 1, 0))),
    }
