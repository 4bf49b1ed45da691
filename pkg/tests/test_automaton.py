from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from bundle_rewriting.automaton import PatternAutomaton
from bundle_rewriting.words import Letter, occurrences

LETTERS = [Letter(g, s) for g in "ab" for s in (1, -1)]
word_st = st.lists(st.sampled_from(LETTERS), max_size=10).map(tuple)


def naive_matches(w, patterns):
    return sorted((p, i) for i, pat in enumerate(patterns) for p in occurrences(pat, w))


@given(st.lists(st.lists(st.sampled_from(LETTERS), min_size=1, max_size=4).map(tuple), min_size=1, max_size=6), word_st)
def test_matches_agree_with_naive_scan(patterns, w):
    aut = PatternAutomaton(LETTERS, patterns)
    got = sorted(aut.matches(w))
    # duplicate patterns: the automaton reports each occurrence once per pattern id
    assert got == naive_matches(w, patterns)
    assert aut.contains_any(w) == bool(got)


def test_states_are_lhs_prefixes():
    a, b = LETTERS[0], LETTERS[2]
    aut = PatternAutomaton(LETTERS, [(a, b), (a, a, b)])
    # root, a, a b, a a, a a b
    assert aut.n_states == 5
