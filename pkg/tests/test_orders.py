from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bundle_rewriting.bundles import (
    BundleGraph,
    Edge,
    Loop,
    SystemPartition,
    Vertex,
    a_,
    generate_restricted,
    generate_system,
    t_,
    two_bundle_graph,
    validate_and_color,
    x_,
)
from bundle_rewriting.errors import AlphabetError, LengthCapError, UnrankedLetterError
from bundle_rewriting.orders import (
    Precedence,
    PsiProfile,
    disorder,
    lemma_precedence,
    parse_precedence,
    psi_greater,
    psi_profile,
    rpo_greater,
)
from bundle_rewriting.system import RewritingSystem, Rule, all_reduction_successors, is_irreducible
from bundle_rewriting.words import Letter, word


def rpo_oracle(u, v, gt):
    """The three clauses written out directly, without memoization; any letter beats the empty word."""
    if not u:
        return False
    if not v:
        return True
    s1, t1 = u[0], v[0]
    if s1 == t1 and rpo_oracle(u[1:], v[1:], gt):
        return True
    if gt(s1, t1) and rpo_oracle(u, v[1:], gt):
        return True
    return u[1:] == v or rpo_oracle(u[1:], v, gt)


def partition_for(sys: RewritingSystem) -> SystemPartition:
    return SystemPartition(frozenset(sys.alphabet), frozenset(), sys)


LETTERS = [Letter(g, s) for g in "abc" for s in (1, -1)]
word_st = st.lists(st.sampled_from(LETTERS), max_size=5).map(tuple)
# a random precedence: tiers with possible ties, so some letters are incomparable
prec_st = st.lists(st.integers(0, 3), min_size=len(LETTERS), max_size=len(LETTERS)).map(
    lambda ranks: Precedence(dict(zip(LETTERS, ranks)))
)


def test_rpo_examples():
    x, y, a, b = (Letter(g) for g in "xyab")
    assert rpo_greater((x,), (y,), Precedence.from_chain([x, y]))
    ab = Precedence.from_chain([a, b])
    assert not rpo_greater((a, b), (a, b), ab)
    assert rpo_greater((a,), (b, b, b), ab)
    assert rpo_greater((a,), (), ab)
    assert not rpo_greater((), (a,), ab)
    xv, av = x_("v"), a_("v", 1)
    assert rpo_greater((xv, av), (av, xv), Precedence.from_chain([xv, av]))


def test_rpo_unranked_letter():
    a = Letter("a")
    with pytest.raises(UnrankedLetterError, match="z"):
        rpo_greater((a, Letter("z")), (a,), Precedence.from_chain([a]))


@given(word_st, word_st, prec_st)
def test_rpo_agrees_with_unmemoized_recursion(u, v, prec):
    assert rpo_greater(u, v, prec) == rpo_oracle(u, v, prec.greater)


@given(word_st, prec_st)
def test_rpo_irreflexive(u, prec):
    assert not rpo_greater(u, u, prec)


@settings(max_examples=300)
@given(word_st, word_st, word_st, prec_st)
def test_rpo_transitive(u, v, w, prec):
    if rpo_greater(u, v, prec) and rpo_greater(v, w, prec):
        assert rpo_greater(u, w, prec)


@given(word_st, word_st, word_st, word_st, prec_st)
def test_rpo_compatible_with_concatenation(u, v, x, y, prec):
    assume(rpo_greater(u, v, prec))
    assert rpo_greater(x + u + y, x + v + y, prec)


def test_parse_precedence():
    prec = parse_precedence("x^-1 > x > y^-1 ~ y")
    xi, x, yi, y = Letter("x", -1), Letter("x"), Letter("y", -1), Letter("y")
    assert prec.greater(xi, x) and prec.greater(x, yi)
    assert not prec.greater(yi, y) and not prec.greater(y, yi)
    assert prec.describe() == "x^-1 > x > y^-1 ~ y"
    with pytest.raises(ValueError):
        parse_precedence("x > x")


def test_lemma_precedence_two_bundle():
    g = two_bundle_graph(1, 1, 0)
    prec = lemma_precedence(g)
    aw, av, xv, xw = a_("w", 1), a_("v", 1), x_("v"), x_("w")
    assert prec.greater(xv, av)
    assert prec.greater(aw, xv.inverse)
    assert prec.greater(xv.inverse, xv) and prec.greater(av, xw.inverse) and prec.greater(xw.inverse, xw)
    assert not any(z.generator.startswith("t.") for z in prec.ranks)


def test_lemma_precedence_red_loop_on_top():
    g = BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 0),), (Loop("l", "w", 1),))
    tiers = lemma_precedence(g).tiers()
    assert tiers[0] == [t_("l").inverse] and tiers[1] == [t_("l")]


def test_lemma_rules_decrease_on_suite(suite):
    for name, (g, col) in suite.items():
        restricted, _ = generate_restricted(g, col)
        prec = lemma_precedence(g, col)
        assert set(prec.ranks) == set(restricted.letters), name
        for r in restricted.rules:
            assert rpo_greater(r.lhs, r.rhs, prec), (name, str(r))


FREE_X = RewritingSystem(("x",), (Rule(word("x x^-1"), ()), Rule(word("x^-1 x"), ())))
XA = RewritingSystem(("x", "a"), (Rule(word("x a"), word("a x")),))


def test_disorder_examples():
    assert disorder(word("a x"), partition_for(XA)) == 0
    assert disorder(word("x x^-1 x"), partition_for(FREE_X)) == 1
    assert disorder(word("x a a"), partition_for(XA)) == 2
    with pytest.raises(LengthCapError):
        disorder(word("x a a"), partition_for(XA), length_cap=2)


def disorder_oracle(w, sys):
    best = 0
    for i in range(len(w)):
        for r in sys.rules:
            if w[i : i + len(r.lhs)] == r.lhs:
                best = max(best, 1 + disorder_oracle(w[:i] + r.rhs + w[i + len(r.lhs) :], sys))
    return best


@pytest.fixture(scope="module")
def blue_loop():
    g = BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 1),), (Loop("k", "v", 2),))
    col = validate_and_color(g)
    full = generate_system(g, col)
    restricted, part = generate_restricted(g, col)
    return g, full, restricted, part


def test_disorder_rejects_excluded_letters(blue_loop):
    _, _, _, part = blue_loop
    with pytest.raises(AlphabetError):
        disorder((t_("k"),), part)


def test_disorder_properties_exhaustive(blue_loop):
    _, _, restricted, part = blue_loop
    sample = [x_("v"), x_("w"), Letter("r.k"), Letter("s.k")]
    alphabet = sample + [z.inverse for z in sample]
    memo: dict = {}
    for n in range(5):
        for w in itertools.product(alphabet, repeat=n):
            d = disorder(w, part, memo=memo)
            assert (d == 0) == is_irreducible(w, restricted)
            succ = all_reduction_successors(w, restricted)
            if succ:
                ds = [disorder(s, part, memo=memo) for s in succ]
                assert d == 1 + max(ds)
            if n <= 3:
                assert d == disorder_oracle(w, restricted)


def test_psi_examples(blue_loop):
    _, full, _, part = blue_loop
    t, r, x = t_("k"), Letter("r.k"), x_("v")
    assert psi_profile((t,), part).values == (1, 0, 0, 0, 0, 0)
    assert psi_profile((x, t), part).values == (1, 0, 0, 1, 0, 0)
    assert psi_greater((x, t), (t, r), part)
    assert Rule((x, t), (t, r)) in full.rules
    assert psi_greater((t, x, t), (t,), part)
    assert not psi_greater((x, t), (x, t), part)


def test_psi_profile_padding():
    assert PsiProfile((1, 0, 2)) > PsiProfile((1, 0, 1, 9))
    assert not PsiProfile((1, 0)) > PsiProfile((1, 0, 0, 0))
    assert PsiProfile((0,)) < PsiProfile((0, 0, 0, 1))


def test_every_full_rule_psi_decreases(suite):
    from conftest import BLUE_LOOP_GRAPHS

    for name in BLUE_LOOP_GRAPHS:
        g, col = suite[name]
        full = generate_system(g, col)
        _, part = generate_restricted(g, col)
        memo: dict = {}
        for r in full.rules:
            assert psi_greater(r.lhs, r.rhs, part, memo=memo), (name, str(r))
