"""Letters and words over a group alphabet ``S ∪ S^-1``.

A :class:`Letter` is a generator token with a sign; a word is a plain tuple
of letters. The empty tuple is the identity of the free monoid and prints as
``1`` wherever a placeholder is needed (rule right-hand sides, CLI output).
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

INVERSE_SUFFIX = "^-1"


class Letter(NamedTuple):
    generator: str
    sign: int = 1

    @property
    def inverse(self) -> Letter:
        return Letter(self.generator, -self.sign)

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else self.generator + INVERSE_SUFFIX


Word = tuple  # tuple[Letter, ...]

EMPTY: Word = ()


def letter(token: str) -> Letter:
    """Parse ``g`` or ``g^-1`` into a letter."""
    token = token.strip()
    sign = 1
    if token.endswith(INVERSE_SUFFIX):
        token = token[: -len(INVERSE_SUFFIX)]
        sign = -1
    if not token or token == "1" or any(c.isspace() for c in token) or "^" in token:
        raise ValueError(f"malformed letter token {token!r}")
    return Letter(token, sign)


def word(text: str | Iterable[Letter | str]) -> Word:
    """Build a word from whitespace-separated tokens (``"1"`` or ``""`` is empty)."""
    if isinstance(text, str):
        tokens = text.split()
        if tokens == ["1"]:
            return EMPTY
        return tuple(letter(t) for t in tokens)
    return tuple(x if isinstance(x, Letter) else letter(x) for x in text)


def format_word(w: Word, empty: str = "1") -> str:
    if not w:
        return empty
    return " ".join(str(x) for x in w)


def formal_inverse(w: Word) -> Word:
    """Reverse ``w`` and flip the sign of every letter."""
    return tuple(Letter(x.generator, -x.sign) for x in reversed(w))


def power(x: Letter, n: int) -> Word:
    """``x^n`` as a word; negative exponents use the inverse letter."""
    if n >= 0:
        return (x,) * n
    return (x.inverse,) * (-n)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u + v + formal_inverse(u) + formal_inverse(v)


def occurrences(pattern: Word, w: Word) -> list[int]:
    """Every start index at which ``pattern`` occurs as a factor of ``w``."""
    m = len(pattern)
    return [i for i in range(len(w) - m + 1) if w[i : i + m] == pattern]
