"""Reading and writing the line-oriented ``.rws`` rewriting-system format.

::

    # comment
    letters: x a b
    tag: blue-vertex
    x a -> a x
    a a^-1 -> 1
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, RewritingError
from .system import TAGS, RewritingSystem, Rule
from .words import format_word, word


def loads(text: str, path: str | None = None) -> RewritingSystem:
    alphabet: list[str] | None = None
    rules: list[Rule] = []
    pending_tag: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("letters:"):
            if alphabet is not None:
                raise ParseError("duplicate letters: line", lineno, path)
            alphabet = line[len("letters:") :].split()
            if not alphabet:
                raise ParseError("letters: line declares no generators", lineno, path)
            bad = [t for t in alphabet if t.endswith("^-1") or t == "1"]
            if bad:
                raise ParseError(f"invalid generator token {bad[0]!r}", lineno, path)
            continue
        if line.startswith("tag:"):
            pending_tag = line[len("tag:") :].strip()
            if pending_tag not in TAGS:
                raise ParseError(f"unknown tag {pending_tag!r}", lineno, path)
            continue
        if "->" not in line:
            raise ParseError(f"expected 'lhs -> rhs', got {line!r}", lineno, path)
        if alphabet is None:
            raise ParseError("rule before letters: line", lineno, path)
        lhs_text, _, rhs_text = line.partition("->")
        try:
            lhs, rhs = word(lhs_text), word(rhs_text)
            if not rhs_text.strip():
                raise ValueError("empty right-hand side (write 1)")
            unknown = [z for z in lhs + rhs if z.generator not in alphabet]
            if unknown:
                raise ValueError(f"letter {unknown[0]} is not declared in letters:")
            rules.append(Rule(lhs, rhs, pending_tag))
        except (ValueError, RewritingError) as exc:
            raise ParseError(str(exc), lineno, path) from None
        pending_tag = None
    if alphabet is None:
        raise ParseError("missing letters: line", None, path)
    try:
        return RewritingSystem(tuple(alphabet), tuple(rules))
    except RewritingError as exc:
        raise ParseError(str(exc), None, path) from None


def load(path: str | Path) -> RewritingSystem:
    p = Path(path)
    return loads(p.read_text(encoding="utf-8"), str(p))


def dumps(sys: RewritingSystem, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append("letters: " + " ".join(sys.alphabet))
    for r in sys.rules:
        if r.tag is not None:
            lines.append(f"tag: {r.tag}")
        lines.append(f"{format_word(r.lhs)} -> {format_word(r.rhs)}")
    return "\n".join(lines) + "\n"


def dump(sys: RewritingSystem, path: str | Path, header: str | None = None) -> None:
    Path(path).write_text(dumps(sys, header), encoding="utf-8")
