"""Complete rewriting systems for graphs of circle bundles.

Generates string rewriting systems for fundamental groups of graphs of
circle bundles, checks them for completeness by critical-pair resolution,
certifies termination, and enumerates normal forms.
"""

from __future__ import annotations

from .bundles import (
    BundleGraph,
    Coloring,
    Edge,
    Loop,
    Vertex,
    defining_relators,
    fixtures,
    generate_restricted,
    generate_system,
    load_graph,
    loads_graph,
    two_bundle_graph,
    validate_and_color,
)
from .knuth_bendix import StrategyProbe, check_complete, complete, critical_pairs, resolve
from .normal_forms import (
    TwoBundleLayout,
    ac_length_oracle,
    block_decompose,
    build_automaton,
    growth_series,
    words_equal,
)
from .orders import Precedence, disorder, lemma_precedence, parse_precedence, psi_profile, rpo_greater
from .system import RewritingSystem, Rule, random_reduce, reduce, reduce_counted
from .words import Letter, format_word, formal_inverse, letter, word

__all__ = [
    "BundleGraph", "Coloring", "Edge", "Letter", "Loop", "Precedence", "RewritingSystem", "Rule",
    "StrategyProbe", "TwoBundleLayout", "Vertex", "ac_length_oracle", "block_decompose",
    "build_automaton", "check_complete", "complete", "critical_pairs", "defining_relators",
    "disorder", "fixtures", "format_word", "formal_inverse", "generate_restricted",
    "generate_system", "growth_series", "lemma_precedence", "letter", "load_graph", "loads_graph",
    "parse_precedence", "psi_profile", "random_reduce", "reduce", "reduce_counted", "resolve",
    "rpo_greater", "two_bundle_graph", "validate_and_color", "word", "words_equal",
]
