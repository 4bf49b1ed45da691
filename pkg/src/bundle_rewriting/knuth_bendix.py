"""Critical pairs, completeness checking, and Knuth-Bendix completion."""

from __future__ import annotations

import logging
import sys as _sys
from collections import deque
from dataclasses import dataclass, field

from .errors import DivergenceError, NonterminationError, UnorientableEquationError, UnrankedLetterError
from .orders import Precedence, rpo_greater
from .system import RewritingSystem, Rule, reduce, reduce_counted
from .words import Word, format_word, occurrences

log = logging.getLogger(__name__)

DEFAULT_RULE_CAP = 10_000
DEFAULT_RESOLVE_CAP = 100_000

RESOLVED = "resolved"
UNRESOLVED = "unresolved"
TIMEOUT = "timeout"


@dataclass(frozen=True)
class CriticalPair:
    source: Word
    left_reduct: Word
    right_reduct: Word
    kind: str  # "overlap" | "containment"
    provenance: tuple[int, int, int]  # (rule i, rule j, offset of rule j's lhs in source)


@dataclass(frozen=True)
class ResolutionReport:
    pair: CriticalPair
    status: str
    joined_at: Word | None = None
    left_normal: Word | None = None
    right_normal: Word | None = None
    steps_used: tuple[int, int] = (0, 0)

    @property
    def resolved(self) -> bool:
        return self.status == RESOLVED

    def line(self) -> str:
        src = format_word(self.pair.source)
        if self.status == RESOLVED:
            return f"RESOLVED {src} => {format_word(self.joined_at)}"
        left = format_word(self.left_normal if self.left_normal is not None else self.pair.left_reduct)
        right = format_word(self.right_normal if self.right_normal is not None else self.pair.right_reduct)
        word = "UNRESOLVED" if self.status == UNRESOLVED else "TIMEOUT"
        return f"{word} {src} => {left} | {right}"


def _pairs_between(i: int, ri: Rule, j: int, rj: Rule) -> list[CriticalPair]:
    out = []
    l1, l2 = ri.lhs, rj.lhs
    # overlaps: l1 = r1 r2, l2 = r2 r3, all three nonempty
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            r1, r3 = l1[:-k], l2[k:]
            out.append(
                CriticalPair(l1 + r3, ri.rhs + r3, r1 + rj.rhs, "overlap", (i, j, len(r1)))
            )
    # containment: l2 is a factor of l1
    if i != j and len(l2) <= len(l1):
        for p in occurrences(l2, l1):
            out.append(
                CriticalPair(
                    l1, ri.rhs, l1[:p] + rj.rhs + l1[p + len(l2) :], "containment", (i, j, p)
                )
            )
    return out


def critical_pairs(sys: RewritingSystem) -> list[CriticalPair]:
    """All overlap and containment pairs over ordered rule pairs, self-pairs included."""
    seen = set()
    out = []
    rules = sys.rules
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            for cp in _pairs_between(i, ri, j, rj):
                key = (cp.source, frozenset((cp.left_reduct, cp.right_reduct)))
                if key not in seen:
                    seen.add(key)
                    out.append(cp)
    return out


def resolve(pair: CriticalPair, sys: RewritingSystem, step_cap: int = DEFAULT_RESOLVE_CAP) -> ResolutionReport:
    if step_cap < 1:
        raise ValueError("step_cap must be at least 1")
    try:
        left, nl = reduce_counted(pair.left_reduct, sys, step_cap)
        right, nr = reduce_counted(pair.right_reduct, sys, step_cap)
    except NonterminationError:
        return ResolutionReport(pair, TIMEOUT)
    if left == right:
        return ResolutionReport(pair, RESOLVED, left, left, right, (nl, nr))
    return ResolutionReport(pair, UNRESOLVED, None, left, right, (nl, nr))


@dataclass
class CompletenessSummary:
    reports: list[ResolutionReport] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def resolved_count(self) -> int:
        return sum(r.resolved for r in self.reports)

    @property
    def unresolved(self) -> list[ResolutionReport]:
        return [r for r in self.reports if r.status == UNRESOLVED]

    @property
    def inconclusive(self) -> list[ResolutionReport]:
        return [r for r in self.reports if r.status == TIMEOUT]

    @property
    def complete(self) -> bool:
        return self.resolved_count == self.total

    @property
    def verdict(self) -> str:
        if self.unresolved:
            return "refuted"
        if self.inconclusive:
            return "inconclusive"
        return "complete"

    def summary_line(self) -> str:
        if self.complete:
            return f"{self.total} pairs, all resolved"
        return (
            f"{self.total} pairs, {self.resolved_count} resolved, "
            f"{len(self.unresolved)} unresolved, {len(self.inconclusive)} inconclusive"
        )


def check_complete(sys: RewritingSystem, step_cap: int = DEFAULT_RESOLVE_CAP) -> CompletenessSummary:
    """Resolve every critical pair.

    Local confluence plus termination gives completeness; termination must be
    certified separately (see :mod:`bundle_rewriting.orders`).
    """
    return CompletenessSummary([resolve(cp, sys, step_cap) for cp in critical_pairs(sys)])


def _orient(s: Word, t: Word, prec: Precedence) -> Rule:
    if rpo_greater(s, t, prec):
        return Rule(s, t, "other")
    if rpo_greater(t, s, prec):
        return Rule(t, s, "other")
    raise UnorientableEquationError(s, t, f"{format_word(s)} = {format_word(t)}")


def complete(
    sys: RewritingSystem,
    prec: Precedence,
    rule_cap: int = DEFAULT_RULE_CAP,
    step_cap: int = DEFAULT_RESOLVE_CAP,
) -> RewritingSystem:
    """Knuth-Bendix completion with rules oriented by the recursive path ordering.

    Equations are processed first-in first-out. Each new rule inter-reduces
    the existing ones: rules whose lhs it rewrites go back on the queue as
    equations, the others get their rhs normalized.
    """
    for z in {z for r in sys.rules for z in r.lhs + r.rhs}:
        if z not in prec.ranks:
            raise UnrankedLetterError(z)
    if check_complete(sys, step_cap).complete:
        return sys

    alphabet = sys.alphabet
    rules: list[Rule] = []
    current = RewritingSystem(alphabet, ())
    queue: deque[tuple[Word, Word]] = deque((r.lhs, r.rhs) for r in sys.rules)

    def rebuild() -> RewritingSystem:
        return RewritingSystem(alphabet, tuple(rules))

    while True:
        while queue:
            s, t = queue.popleft()
            s, t = reduce(s, current, step_cap), reduce(t, current, step_cap)
            if s == t:
                continue
            new = _orient(s, t, prec)
            probe = RewritingSystem(alphabet, (new,))
            kept = []
            for r in rules:
                if probe.automaton.contains_any(r.lhs):
                    queue.append((r.lhs, r.rhs))
                else:
                    kept.append(r)
            rules = kept
            rules.append(new)
            current = rebuild()
            rules = [Rule(r.lhs, reduce(r.rhs, current, step_cap), r.tag) if r is not new else r for r in rules]
            # normalizing right-hand sides can produce duplicates
            rules = list(dict.fromkeys(rules))
            current = rebuild()
            if len(rules) > rule_cap:
                raise DivergenceError(f"completion exceeded {rule_cap} rules; divergence suspected")
            idx = rules.index(new)
            for j, r in enumerate(rules):
                for cp in _pairs_between(idx, new, j, r) + (_pairs_between(j, r, idx, new) if j != idx else []):
                    queue.append((cp.left_reduct, cp.right_reduct))
            log.debug("added %s (%d rules)", new, len(rules))
        summary = check_complete(current, step_cap)
        if summary.complete:
            return current
        for rep in summary.unresolved + summary.inconclusive:
            queue.append((rep.pair.left_reduct, rep.pair.right_reduct))


class StrategyProbe:
    """Irreducible words reachable from a word under every rewriting strategy.

    Words are encoded one character per letter and the reachable sets are
    memoized across calls, so probing all short words shares most of the work.
    Assumes the system is Noetherian; a cycle would recurse without bound.
    """

    def __init__(self, sys: RewritingSystem) -> None:
        import re

        self.sys = sys
        self.code = {z: chr(0x100 + i) for i, z in enumerate(sys.letters)}
        self.decode = {c: z for z, c in self.code.items()}
        self._rules: dict[str, list[tuple[int, str]]] = {}
        for r in sys.rules:
            self._rules.setdefault(self.encode(r.lhs), []).append((len(r.lhs), self.encode(r.rhs)))
        alts = sorted(self._rules, key=len, reverse=True)
        # zero-width lookahead reports every redex, overlapping ones included
        self._pattern = re.compile("(?=(" + "|".join(re.escape(a) for a in alts) + "))")
        self._lengths = sorted({len(a) for a in alts})
        self.memo: dict[str, frozenset[str]] = {}

    def encode(self, w: Word) -> str:
        return "".join(self.code[z] for z in w)

    def decode_word(self, s: str) -> Word:
        return tuple(self.decode[c] for c in s)

    def _successors(self, s: str):
        for m in self._pattern.finditer(s):
            p = m.start()
            # the lookahead reports one lhs per start; other lengths may match too
            for n in self._lengths:
                for _, rhs in self._rules.get(s[p : p + n], ()):
                    yield s[:p] + rhs + s[p + n :]

    def reachable(self, s: str) -> frozenset[str]:
        hit = self.memo.get(s)
        if hit is not None:
            return hit
        out: frozenset[str] | None = None
        for t in self._successors(s):
            got = self.reachable(t)
            out = got if out is None or out == got else out | got
        if out is None:
            out = frozenset((s,))
        self.memo[s] = out
        return out

    def normal_forms(self, w: Word) -> set[Word]:
        limit = _sys.getrecursionlimit()
        if limit < 20_000:
            _sys.setrecursionlimit(20_000)
        return {self.decode_word(s) for s in self.reachable(self.encode(w))}
