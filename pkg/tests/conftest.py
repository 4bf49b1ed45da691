from __future__ import annotations

import pytest

from bundle_rewriting.bundles import (
    BundleGraph,
    Edge,
    Loop,
    Vertex,
    classic_names,
    generate_system,
    rename,
    two_bundle_graph,
    validate_and_color,
)


def graph_suite() -> dict[str, tuple[BundleGraph, str]]:
    """Test graphs with the color given to the first vertex."""
    return {
        "two-bundle-1-1-0": (two_bundle_graph(1, 1, 0), "blue"),
        "two-bundle-1-1-2": (two_bundle_graph(1, 1, 2), "blue"),
        "two-bundle-2-1-m1": (two_bundle_graph(2, 1, -1), "blue"),
        "path-3": (
            BundleGraph(
                (Vertex("u", 1), Vertex("v", 2), Vertex("w", 1)),
                (Edge("e1", "u", "v", 1), Edge("e2", "v", "w", -2)),
            ),
            "blue",
        ),
        "red-loop-m1": (
            BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 0),), (Loop("l", "w", 1),)),
            "blue",
        ),
        "blue-loop-m2": (
            BundleGraph((Vertex("v", 1), Vertex("w", 1)), (Edge("e", "v", "w", 1),), (Loop("k", "v", 2),)),
            "blue",
        ),
        "one-vertex-blue-loop-m1": (BundleGraph((Vertex("v", 1),), (), (Loop("k", "v", 1),)), "blue"),
        "one-vertex-red-loop-m1": (BundleGraph((Vertex("v", 1),), (), (Loop("l", "v", 1),)), "red"),
        "star": (
            BundleGraph(
                (Vertex("c", 1), Vertex("p", 1), Vertex("q", 2), Vertex("s", 1)),
                (Edge("e1", "c", "p", 3), Edge("e2", "q", "c", 0), Edge("e3", "c", "s", -1)),
                (Loop("k", "c", -1), Loop("l", "p", 2)),
            ),
            "blue",
        ),
    }


BLUE_LOOP_GRAPHS = ("blue-loop-m2", "one-vertex-blue-loop-m1", "star")


@pytest.fixture(scope="session")
def suite():
    return {name: (g, validate_and_color(g, c)) for name, (g, c) in graph_suite().items()}


@pytest.fixture(scope="session")
def sec4():
    """The two-bundle system with g = h = 1, n = 0 in short letter names."""
    g = two_bundle_graph(1, 1, 0)
    col = validate_and_color(g)
    return rename(generate_system(g, col), classic_names(g, col))


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Append a PASS/FAIL line per criterion; printed again in the terminal summary."""

    def record(number: int, ok: bool, text: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
