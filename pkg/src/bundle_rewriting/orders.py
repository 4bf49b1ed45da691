"""Termination orders: recursive path ordering, disorder, and psi profiles.

The recursive path ordering compares words left to right, lifting a
precedence on letters. It is compatible with concatenation, so a system whose
rules all decrease under it is Noetherian.

Words containing letters excluded from the restricted alphabet (the stable
letters of loops at blue vertices) are compared through their psi profile:
the number of excluded letters, then for each block between them its
disorder and its length.
"""

from __future__ import annotations

import sys as _sys
from dataclasses import dataclass
from itertools import chain
from typing import Mapping

from .bundles import (
    BLUE,
    RED,
    BundleGraph,
    Coloring,
    SystemPartition,
    a_,
    b_,
    r_,
    s_,
    t_,
    validate_and_color,
    x_,
)
from .errors import AlphabetError, LengthCapError, UnrankedLetterError
from .system import all_reduction_successors
from .words import Letter, Word, format_word

DEFAULT_LENGTH_CAP = 12


@dataclass(frozen=True)
class Precedence:
    """A strict partial order on letters given by integer tiers.

    ``a > b`` iff both are ranked and ``rank[a] > rank[b]``; distinct letters
    sharing a tier are incomparable.
    """

    ranks: Mapping[Letter, int]

    @classmethod
    def from_chain(cls, letters) -> Precedence:
        """Total order from a sequence listed greatest first."""
        letters = list(letters)
        if len(set(letters)) != len(letters):
            raise ValueError("repeated letter in precedence chain")
        n = len(letters)
        return cls({x: n - i for i, x in enumerate(letters)})

    def greater(self, a: Letter, b: Letter) -> bool:
        ra, rb = self.ranks.get(a), self.ranks.get(b)
        return ra is not None and rb is not None and ra > rb

    def tiers(self) -> list[list[Letter]]:
        by: dict[int, list[Letter]] = {}
        for x, r in self.ranks.items():
            by.setdefault(r, []).append(x)
        return [by[r] for r in sorted(by, reverse=True)]

    def describe(self) -> str:
        return " > ".join(" ~ ".join(str(x) for x in tier) for tier in self.tiers())


def parse_precedence(text: str) -> Precedence:
    """Parse ``"x^-1 > x > y^-1 > y"``; ``~`` joins incomparable letters in one tier."""
    from .words import letter

    tiers = [t.split("~") for t in text.split(">")]
    n = len(tiers)
    ranks = {}
    for i, tier in enumerate(tiers):
        for tok in tier:
            x = letter(tok)
            if x in ranks:
                raise ValueError(f"letter {x} ranked twice")
            ranks[x] = n - i
    return Precedence(ranks)


def rpo_greater(u: Word, v: Word, prec: Precedence) -> bool:
    """Recursive path ordering ``u >_rpo v`` on words."""
    rank = prec.ranks
    for z in chain(u, v):
        if z not in rank:
            raise UnrankedLetterError(z)
    m, n = len(u), len(v)
    memo: dict[tuple[int, int], bool] = {}

    def gt(i: int, j: int) -> bool:
        # u[i:] > v[j:]
        if i == m:
            return False
        if j == n:
            return True
        key = (i, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        s, t = u[i], v[j]
        res = (
            (s == t and gt(i + 1, j + 1))
            or (rank[s] > rank[t] and gt(i, j + 1))
            or (m - i - 1 == n - j and u[i + 1 :] == v[j:])
            or gt(i + 1, j)
        )
        memo[key] = res
        return res

    limit = _sys.getrecursionlimit()
    if m + n + 100 > limit:
        _sys.setrecursionlimit(m + n + 100)
    return gt(0, 0)


def lemma_precedence(graph: BundleGraph, coloring: Coloring | None = None) -> Precedence:
    """Total precedence on the restricted alphabet under which every R' rule decreases.

    From the top: red-loop stable letters, red surface letters, blue fiber
    inverses, red-loop ``r, s``, blue fibers, blue surface letters, blue-loop
    ``r, s``, red fibers. Ties inside a tier follow declaration order.
    """
    coloring = coloring if coloring is not None else validate_and_color(graph)
    blue = [v for v in graph.vertices if coloring.color(v.id) == BLUE]
    red = [v for v in graph.vertices if coloring.color(v.id) == RED]
    blue_loops = [l for l in graph.loops if coloring.color(l.vertex) == BLUE]
    red_loops = [l for l in graph.loops if coloring.color(l.vertex) == RED]

    def pair(x: Letter) -> list[Letter]:
        return [x.inverse, x]

    def surface(v) -> list[Letter]:
        out = []
        for j in range(1, v.genus + 1):
            out += pair(a_(v.id, j)) + pair(b_(v.id, j))
        return out

    def rs(l) -> list[Letter]:
        return pair(r_(l.id)) + pair(s_(l.id))

    chain_: list[Letter] = []
    for l in red_loops:
        chain_ += pair(t_(l.id))
    for w in red:
        chain_ += surface(w)
    for v in blue:
        chain_.append(x_(v.id).inverse)
    for l in red_loops:
        chain_ += rs(l)
    for v in blue:
        chain_.append(x_(v.id))
    for v in blue:
        chain_ += surface(v)
    for k in blue_loops:
        chain_ += rs(k)
    for w in red:
        chain_ += pair(x_(w.id))
    return Precedence.from_chain(chain_)


def _check_restricted(w: Word, part: SystemPartition) -> None:
    for z in w:
        if z.generator not in part.restricted_alphabet:
            raise AlphabetError(f"letter {z} is not in the restricted alphabet")


def disorder(
    w: Word,
    part: SystemPartition,
    length_cap: int = DEFAULT_LENGTH_CAP,
    memo: dict | None = None,
) -> int:
    """Length of the longest rewriting sequence from ``w`` under R'.

    ``memo`` may be shared between calls over the same partition.
    """
    w = tuple(w)
    if len(w) > length_cap:
        raise LengthCapError(f"word of length {len(w)} exceeds disorder cap {length_cap}")
    _check_restricted(w, part)
    sys = part.restricted_system
    memo = {} if memo is None else memo
    if w in memo:
        return memo[w]
    # iterative post-order DFS; R' is Noetherian so the successor graph is acyclic
    stack: list[tuple[Word, list[Word] | None]] = [(w, None)]
    on_path: set[Word] = set()
    while stack:
        cur, succ = stack[-1]
        if succ is None:
            if cur in memo:
                stack.pop()
                continue
            succ = list(all_reduction_successors(cur, sys))
            stack[-1] = (cur, succ)
            on_path.add(cur)
        pending = [s for s in succ if s not in memo]
        if pending:
            nxt = pending[0]
            if nxt in on_path:
                raise RuntimeError(f"rewriting cycle through {format_word(nxt)}")
            stack.append((nxt, None))
            continue
        memo[cur] = max((1 + memo[s] for s in succ), default=0)
        on_path.discard(cur)
        stack.pop()
    return memo[w]


@dataclass(frozen=True)
class PsiProfile:
    """``(psi_0, psi_1, psi_2, ...)`` with ``psi_1`` always 0 (it is never defined)."""

    values: tuple[int, ...]

    def padded(self, n: int) -> tuple[int, ...]:
        return self.values + (0,) * (n - len(self.values))

    def __gt__(self, other: PsiProfile) -> bool:
        n = max(len(self.values), len(other.values))
        return self.padded(n) > other.padded(n)

    def __lt__(self, other: PsiProfile) -> bool:
        return other > self


def split_blocks(w: Word, part: SystemPartition) -> tuple[list[Word], list[Letter]]:
    """``w = u_1 t_1 u_2 ... t_j u_{j+1}``: the A'-blocks and the excluded letters."""
    blocks: list[Word] = []
    cuts: list[Letter] = []
    cur: list[Letter] = []
    for z in w:
        if part.is_excluded(z):
            blocks.append(tuple(cur))
            cuts.append(z)
            cur = []
        else:
            cur.append(z)
    blocks.append(tuple(cur))
    return blocks, cuts


def psi_profile(
    w: Word,
    part: SystemPartition,
    length_cap: int = DEFAULT_LENGTH_CAP,
    memo: dict | None = None,
) -> PsiProfile:
    blocks, cuts = split_blocks(tuple(w), part)
    memo = {} if memo is None else memo
    values = [len(cuts), 0]
    for u in blocks:
        values += [disorder(u, part, length_cap, memo), len(u)]
    return PsiProfile(tuple(values))


def psi_greater(
    w1: Word,
    w2: Word,
    part: SystemPartition,
    length_cap: int = DEFAULT_LENGTH_CAP,
    memo: dict | None = None,
) -> bool:
    memo = {} if memo is None else memo
    return psi_profile(w1, part, length_cap, memo) > psi_profile(w2, part, length_cap, memo)
