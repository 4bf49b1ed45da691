from __future__ import annotations

from collections import Counter

import pytest

from bundle_rewriting.bundles import (
    BLUE,
    RED,
    BundleGraph,
    Edge,
    Loop,
    Vertex,
    a_,
    b_,
    classic_names,
    defining_relators,
    dumps_graph,
    fixtures,
    generate_restricted,
    generate_system,
    lambda_word,
    loads_graph,
    n_w,
    omega_word,
    r_,
    rename,
    s_,
    t_,
    twist_from_matrix,
    two_bundle_graph,
    validate_and_color,
    x_,
)
from bundle_rewriting.errors import (
    DisconnectedGraphError,
    GraphError,
    NotATreeError,
    ParseError,
    UnsupportedGenusError,
    UnsupportedGluingError,
)
from bundle_rewriting.knuth_bendix import check_complete
from bundle_rewriting.system import Rule, reduce
from bundle_rewriting.words import word


def rule(text: str) -> Rule:
    lhs, rhs = text.split("->")
    return Rule(word(lhs), word(rhs))


def test_two_vertex_coloring():
    g = two_bundle_graph(1, 1, 0)
    col = validate_and_color(g)
    assert col.color("v") == BLUE and col.color("w") == RED
    assert (col.initial(g.edges[0]), col.terminal(g.edges[0])) == ("v", "w")


def test_edge_orientation_follows_colors():
    g = BundleGraph((Vertex("u", 1), Vertex("v", 1), Vertex("w", 1)), (Edge("e1", "u", "v", 0), Edge("e2", "w", "v", 0)))
    col = validate_and_color(g)
    assert [col.color(v) for v in "uvw"] == [BLUE, RED, BLUE]
    assert col.initial(g.edges[1]) == "w" and col.terminal(g.edges[1]) == "v"


def test_single_vertex_two_loops_is_blue():
    g = BundleGraph((Vertex("v", 1),), (), (Loop("k1", "v", 1), Loop("k2", "v", 0)))
    col = validate_and_color(g)
    assert col.color("v") == BLUE
    _, part = generate_restricted(g, col)
    assert part.excluded_letters == {"t.k1", "t.k2"}
    assert validate_and_color(g, RED).color("v") == RED


def test_validation_errors():
    tri = BundleGraph(
        (Vertex("u", 1), Vertex("v", 1), Vertex("w", 1)),
        (Edge("e1", "u", "v", 0), Edge("e2", "v", "w", 0), Edge("e3", "w", "u", 0)),
    )
    with pytest.raises(NotATreeError, match="not a tree after loop removal"):
        validate_and_color(tri)
    with pytest.raises(NotATreeError):
        validate_and_color(BundleGraph((Vertex("u", 1), Vertex("v", 1)), (Edge("e1", "u", "v", 0), Edge("e2", "v", "u", 1))))
    with pytest.raises(DisconnectedGraphError):
        validate_and_color(BundleGraph((Vertex("u", 1), Vertex("v", 1))))
    with pytest.raises(UnsupportedGenusError):
        validate_and_color(BundleGraph((Vertex("u", 0),)))
    with pytest.raises(GraphError):
        validate_and_color(BundleGraph((Vertex("u", 1),), (Edge("e", "u", "zz", 0),)))
    with pytest.raises(GraphError):
        validate_and_color(BundleGraph((Vertex("u", 1), Vertex("u", 2))))


def test_n_w():
    g = BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", -3),))
    assert n_w(g, None, "w") == -3
    g2 = BundleGraph(
        (Vertex("v1", 1), Vertex("w", 1), Vertex("v2", 1)),
        (Edge("e1", "w", "v1", 2), Edge("e2", "v2", "w", 5)),
    )
    col = validate_and_color(g2)
    assert col.color("w") == RED
    assert n_w(g2, col, "w") == 7
    with pytest.raises(GraphError):
        n_w(g2, col, "v1")


def test_lambda_and_omega():
    g = two_bundle_graph(1, 1, 0)
    assert lambda_word(g, None, "v") == (x_("w"),)
    assert omega_word(g, None, "w") == (x_("v"),)
    gl = BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 0),), (Loop("k", "v", 1),))
    assert lambda_word(gl, None, "v") == (x_("w"), r_("k"), s_("k"))
    with pytest.raises(GraphError):
        lambda_word(g, None, "w")
    with pytest.raises(GraphError):
        omega_word(g, None, "v")


def test_two_bundle_amalgam_rules(sec4):
    assert rule("a1 b1 -> y b1 a1") in sec4.rules
    assert rule("c1 d1 -> x d1 c1") in sec4.rules
    g = two_bundle_graph(1, 1, 2)
    sys2 = rename(generate_system(g), classic_names(g))
    assert rule("c1 d1 -> y^-1 y^-1 x d1 c1") in sys2.rules


def test_blue_hnn_rules_with_unit_twist():
    g = BundleGraph((Vertex("v", 1),), (), (Loop("k", "v", 1),))
    sys = generate_system(g)
    t, r, s, x = t_("k"), r_("k"), s_("k"), x_("v")
    assert Rule((s, t), (t, r.inverse, x)) in sys.rules
    assert Rule((x, t.inverse), (t.inverse, s, x)) in sys.rules


def test_two_bundle_rule_counts(sec4):
    counts = Counter(r.tag for r in sec4.rules)
    # 6 generators give 12 cancellations; 2 generator pairs per vertex give 8 commutations each
    assert counts == {
        "inverse-cancellation": 12,
        "blue-vertex": 8,
        "red-vertex": 8,
        "edge": 4,
        "blue-amalgam": 4,
        "red-amalgam": 4,
    }
    assert len(sec4) == 40


def test_restricted_system(suite):
    g, col = suite["two-bundle-1-1-0"]
    restricted, part = generate_restricted(g, col)
    assert restricted == generate_system(g, col) and not part.excluded_letters

    g, col = suite["blue-loop-m2"]
    full = generate_system(g, col)
    restricted, part = generate_restricted(g, col)
    dropped = set(full.rules) - set(restricted.rules)
    assert len(dropped) == 10
    assert Counter(r.tag for r in dropped) == {"blue-HNN": 8, "inverse-cancellation": 2}
    assert part.excluded_letters == {"t.k"}
    assert all(not part.is_excluded(z) for r in restricted.rules for z in r.lhs + r.rhs)

    g, col = suite["red-loop-m1"]
    restricted, part = generate_restricted(g, col)
    assert "t.l" in restricted.alphabet and len(restricted.tagged("red-HNN")) == 8


def test_generated_systems_are_left_reduced(suite):
    for g, col in suite.values():
        assert generate_system(g, col).is_left_reduced


def test_defining_relators_reduce_to_identity(suite):
    for name, (g, col) in suite.items():
        sys = generate_system(g, col)
        for rel in defining_relators(g, col):
            assert reduce(rel, sys) == (), (name, rel)


def test_relator_examples(sec4):
    assert reduce(word("x a1 x^-1 a1^-1"), sec4) == ()
    g = BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 0),), (Loop("l", "w", 1),))
    sys = generate_system(g)
    t, r, x = t_("l"), r_("l"), x_("w")
    assert reduce((t, r, t.inverse, x.inverse), sys) == ()


def test_fixtures_are_complete():
    for name, sys in fixtures().items():
        assert check_complete(sys).complete, name


def test_one_vertex_variants_are_complete():
    for genus in (1, 2):
        for color in (BLUE, RED):
            g = BundleGraph((Vertex("v", genus),), (), (Loop("l", "v", 2),))
            col = validate_and_color(g, color)
            assert check_complete(generate_system(g, col)).complete
            assert check_complete(generate_restricted(g, col)[0]).complete


def test_genus_two_uses_commutator_products():
    g = two_bundle_graph(2, 1, 0)
    sys = rename(generate_system(g), classic_names(g))
    assert rule("a1 b1 -> y b2 a2 b2^-1 a2^-1 b1 a1") in sys.rules
    assert rule("a1 b1^-1 -> b1^-1 a2 b2 a2^-1 b2^-1 y^-1 a1") in sys.rules


def test_gob_round_trip_and_errors():
    g = BundleGraph((Vertex("v", 2), Vertex("w", 1)), (Edge("e", "v", "w", -4),), (Loop("k", "v", 3),))
    assert loads_graph(dumps_graph(g)) == g
    assert loads_graph("vertex v genus 1\nvertex w genus 1\nedge e v w matrix 1 5 0 1\n").edges[0].twist == 5
    with pytest.raises(UnsupportedGluingError, match=r"\(1 n; 0 1\)"):
        loads_graph("vertex v genus 1\nvertex w genus 1\nedge e v w matrix 2 1 1 1\n")
    with pytest.raises(ParseError) as info:
        loads_graph("vertex v genus 1\n\nedge e v\n", "g.gob")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        loads_graph("vertex v genus one\n")
    assert twist_from_matrix(1, -2, 0, 1) == -2


def test_generator_tokens_follow_schema(suite):
    g, col = suite["star"]
    sys = generate_system(g, col)
    assert set(sys.alphabet) >= {"x.c", "a.q.2", "b.q.2", "r.k", "s.k", "t.k", "t.l"}
    assert a_("q", 2).generator == "a.q.2" and b_("c", 1).generator == "b.c.1"
