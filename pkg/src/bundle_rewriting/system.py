"""String rewriting systems and reduction to irreducible form."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .automaton import PatternAutomaton
from .errors import FactorMismatchError, NonterminationError, RewritingError, UnknownLetterError
from .words import Letter, Word, format_word

DEFAULT_STEP_CAP = 1_000_000

TAGS = (
    "inverse-cancellation",
    "blue-vertex",
    "red-vertex",
    "edge",
    "blue-amalgam",
    "red-amalgam",
    "blue-HNN",
    "red-HNN",
    "other",
)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word
    tag: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.lhs:
            raise RewritingError("rule left-hand side must be nonempty")
        if self.tag is not None and self.tag not in TAGS:
            raise RewritingError(f"unknown rule tag {self.tag!r}")

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class RewritingSystem:
    """An ordered list of rules over a finite group alphabet.

    ``alphabet`` lists generator tokens; each contributes the two letters
    ``g`` and ``g^-1``.
    """

    alphabet: tuple[str, ...]
    rules: tuple[Rule, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise RewritingError("duplicate generator in alphabet")
        gens = set(self.alphabet)
        seen = set()
        for r in self.rules:
            for x in r.lhs + r.rhs:
                if x.generator not in gens:
                    raise UnknownLetterError(str(x))
            if r in seen:
                raise RewritingError(f"duplicate rule {r}")
            seen.add(r)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(g, s) for g in self.alphabet for s in (1, -1))

    @cached_property
    def automaton(self) -> PatternAutomaton:
        return PatternAutomaton(self.letters, [r.lhs for r in self.rules])

    @cached_property
    def is_left_reduced(self) -> bool:
        """True iff no left-hand side occurs as a factor of a different rule's."""
        aut = self.automaton
        for i, r in enumerate(self.rules):
            for _, p in aut.matches(r.lhs):
                if p != i:
                    return False
        return True

    def tagged(self, tag: str) -> list[Rule]:
        return [r for r in self.rules if r.tag == tag]

    def with_rules(self, rules: Iterable[Rule]) -> RewritingSystem:
        return RewritingSystem(self.alphabet, tuple(rules))

    def check_word(self, w: Word) -> None:
        index = self.automaton.index
        for x in w:
            if x not in index:
                raise UnknownLetterError(str(x))

    def __len__(self) -> int:
        return len(self.rules)


def find_redex(w: Word, sys: RewritingSystem) -> tuple[int, Rule] | None:
    """Leftmost redex; ties go to the longest lhs, then the lowest rule index."""
    sys.check_word(w)
    best = None
    for start, p in sys.automaton.matches(w):
        key = (start, -len(sys.rules[p].lhs), p)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[0], sys.rules[best[2]]


def rewrite_once(w: Word, position: int, rule: Rule) -> Word:
    n = len(rule.lhs)
    if position < 0 or w[position : position + n] != rule.lhs:
        raise FactorMismatchError(
            f"{format_word(rule.lhs)} does not occur at position {position} of {format_word(w)}"
        )
    return w[:position] + rule.rhs + w[position + n :]


def is_irreducible(w: Word, sys: RewritingSystem) -> bool:
    sys.check_word(w)
    return not sys.automaton.contains_any(w)


def all_reduction_successors(w: Word, sys: RewritingSystem) -> set[Word]:
    sys.check_word(w)
    rules = sys.rules
    return {rewrite_once(w, start, rules[p]) for start, p in sys.automaton.matches(w)}


def _cap_error(start: Word, recent: Sequence[Word], cap: int) -> NonterminationError:
    trace = [start, *recent]
    return NonterminationError(
        f"no irreducible word reached from {format_word(start)} within {cap} steps", trace
    )


def _reduce_stack(w: Word, sys: RewritingSystem, step_cap: int) -> tuple[Word, int]:
    # Left-reduced systems only: the earliest-ending redex is then also the
    # leftmost-starting one, so this is the same strategy as find_redex.
    aut = sys.automaton
    delta, index, first = aut.delta, aut.index, aut.first_match
    rules = sys.rules
    pending = list(reversed(w))
    out: list[Letter] = []
    states = [0]
    steps = 0
    recent: deque = deque(maxlen=32)
    while pending:
        x = pending.pop()
        try:
            s = delta[states[-1]][index[x]]
        except KeyError:
            raise UnknownLetterError(str(x)) from None
        out.append(x)
        states.append(s)
        p = first[s]
        if p >= 0:
            steps += 1
            if steps > step_cap:
                raise _cap_error(w, list(recent), step_cap)
            rule = rules[p]
            n = len(rule.lhs)
            del out[-n:]
            del states[-n:]
            pending.extend(reversed(rule.rhs))
            if steps > step_cap - recent.maxlen:
                recent.append(tuple(out) + tuple(reversed(pending)))
    return tuple(out), steps


def _reduce_scan(w: Word, sys: RewritingSystem, step_cap: int) -> tuple[Word, int]:
    steps = 0
    start = w
    recent: deque = deque(maxlen=32)
    while True:
        hit = find_redex(w, sys)
        if hit is None:
            return w, steps
        steps += 1
        if steps > step_cap:
            raise _cap_error(start, list(recent), step_cap)
        w = rewrite_once(w, *hit)
        recent.append(w)


def reduce_counted(w: Word, sys: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP) -> tuple[Word, int]:
    """Reduce ``w`` to irreducible form; return it with the number of steps taken."""
    if step_cap < 1:
        raise ValueError("step_cap must be at least 1")
    if sys.is_left_reduced:
        return _reduce_stack(tuple(w), sys, step_cap)
    sys.check_word(w)
    return _reduce_scan(tuple(w), sys, step_cap)


def reduce(w: Word, sys: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP) -> Word:
    return reduce_counted(w, sys, step_cap)[0]


def random_reduce(
    w: Word, sys: RewritingSystem, rng: random.Random, step_cap: int = DEFAULT_STEP_CAP
) -> Word:
    """Follow one maximal rewriting sequence, picking a uniformly random redex each step."""
    sys.check_word(w)
    start = w
    recent: deque = deque(maxlen=32)
    for _ in range(step_cap):
        hits = sys.automaton.matches(w)
        if not hits:
            return w
        pos, p = rng.choice(hits)
        w = rewrite_once(w, pos, sys.rules[p])
        recent.append(w)
    if not sys.automaton.matches(w):
        return w
    raise _cap_error(start, list(recent), step_cap)
