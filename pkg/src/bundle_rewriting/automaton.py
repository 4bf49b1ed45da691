"""Aho-Corasick pattern automaton over signed letters.

The automaton is built once from the left-hand sides of a rule list and is
then used both to locate redexes and, with a sink state bolted on, as the
deterministic acceptor for irreducible words.

States are integers; state 0 is the root (empty prefix). Transitions are a
dense table ``delta[state][letter_index]`` so scanning is a couple of list
lookups per letter.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .words import Letter, Word


class PatternAutomaton:
    def __init__(self, letters: Sequence[Letter], patterns: Sequence[Word]) -> None:
        self.letters = tuple(letters)
        self.index = {x: i for i, x in enumerate(self.letters)}
        self.patterns = tuple(patterns)
        k = len(self.letters)

        goto: list[dict[int, int]] = [{}]
        depth = [0]
        terminal: list[list[int]] = [[]]
        for p_id, pat in enumerate(self.patterns):
            s = 0
            for x in pat:
                c = self.index[x]
                nxt = goto[s].get(c)
                if nxt is None:
                    nxt = len(goto)
                    goto.append({})
                    depth.append(depth[s] + 1)
                    terminal.append([])
                    goto[s][c] = nxt
                s = nxt
            terminal[s].append(p_id)

        n = len(goto)
        fail = [0] * n
        delta = [[0] * k for _ in range(n)]
        # suffix_out[s]: patterns that are suffixes of state s's string, longest first
        suffix_out: list[tuple[int, ...]] = [()] * n
        order = [0]
        queue = deque()
        for c in range(k):
            t = goto[0].get(c)
            if t is None:
                delta[0][c] = 0
            else:
                delta[0][c] = t
                queue.append(t)
        suffix_out[0] = tuple(terminal[0])
        while queue:
            s = queue.popleft()
            order.append(s)
            suffix_out[s] = tuple(terminal[s]) + suffix_out[fail[s]]
            row = delta[s]
            frow = delta[fail[s]]
            for c in range(k):
                t = goto[s].get(c)
                if t is None:
                    row[c] = frow[c]
                else:
                    row[c] = t
                    fail[t] = frow[c]
                    queue.append(t)

        self.delta = delta
        self.depth = depth
        self.fail = fail
        self.suffix_out = suffix_out
        # lowest-index pattern among the longest ones ending here, or -1
        self.first_match = [
            min(
                (p for p in outs if len(self.patterns[p]) == len(self.patterns[outs[0]])),
                default=-1,
            )
            if outs
            else -1
            for outs in suffix_out
        ]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def matches(self, w: Word) -> list[tuple[int, int]]:
        """All ``(start, pattern_id)`` occurrences in ``w``."""
        out = []
        s = 0
        delta, index, pats = self.delta, self.index, self.patterns
        for end, x in enumerate(w, 1):
            s = delta[s][index[x]]
            for p in self.suffix_out[s]:
                out.append((end - len(pats[p]), p))
        return out

    def contains_any(self, w: Word) -> bool:
        s = 0
        delta, index, outs = self.delta, self.index, self.suffix_out
        for x in w:
            s = delta[s][index[x]]
            if outs[s]:
                return True
        return False
