"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RewritingError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLetterError(RewritingError):
    def __init__(self, token: str, where: str = "alphabet") -> None:
        super().__init__(f"letter {token!r} is not in the {where}")
        self.token = token


class FactorMismatchError(RewritingError):
    """A rule was applied at a position where its left-hand side does not occur."""


class NonterminationError(RewritingError):
    """Reduction exceeded its step cap.

    ``trace`` holds the starting word followed by the most recent words seen
    before the cap was hit.
    """

    def __init__(self, message: str, trace: list) -> None:
        super().__init__(message)
        self.trace = trace


class ParseError(RewritingError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None) -> None:
        loc = ""
        if path is not None:
            loc += f"{path}:"
        if line is not None:
            loc += f"{line}:"
        super().__init__(f"{loc} {message}".strip() if loc else message)
        self.line = line
        self.path = path


class UnrankedLetterError(RewritingError):
    def __init__(self, letter) -> None:
        super().__init__(f"letter {letter} has no rank in the precedence")
        self.letter = letter


class LengthCapError(RewritingError):
    """Exhaustive search refused because the input is longer than the cap."""


class AlphabetError(RewritingError):
    """A word uses letters outside the sub-alphabet an operation requires."""


class GraphError(RewritingError):
    """Invalid graph-of-circle-bundles description."""


class NotATreeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class UnsupportedGenusError(GraphError):
    pass


class UnsupportedGluingError(GraphError):
    pass


class CompletionError(RewritingError):
    pass


class UnorientableEquationError(CompletionError):
    def __init__(self, lhs, rhs, text: str) -> None:
        super().__init__(f"cannot orient equation {text}")
        self.lhs = lhs
        self.rhs = rhs


class DivergenceError(CompletionError):
    pass


class DecompositionError(RewritingError):
    pass
