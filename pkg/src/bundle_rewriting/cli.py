"""Command-line entry point.

Exit codes: 0 success or verified, 1 usage or parse error, 2 verification
refuted, 3 inconclusive (a step cap was hit).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import rwsfile
from .bundles import (
    BLUE,
    classic_names,
    generate_restricted,
    generate_system,
    load_graph,
    rename,
    validate_and_color,
)
from .errors import NonterminationError, RewritingError
from .knuth_bendix import DEFAULT_RESOLVE_CAP, DEFAULT_RULE_CAP, check_complete, complete
from .normal_forms import TwoBundleLayout, block_decompose, growth_series
from .orders import DEFAULT_LENGTH_CAP, Precedence, lemma_precedence, parse_precedence, psi_greater, rpo_greater
from .system import DEFAULT_STEP_CAP, random_reduce, reduce_counted
from .words import Letter, format_word, word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REFUTED = 2
EXIT_INCONCLUSIVE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    graph: str | None = None
    out: str | None = None
    variant: str = "full"
    max_len: int = 8
    step_cap: int = DEFAULT_STEP_CAP
    rule_cap: int = DEFAULT_RULE_CAP
    length_cap: int = DEFAULT_LENGTH_CAP
    seed: int | None = None
    structured: bool = False

    def __post_init__(self) -> None:
        for name in ("step_cap", "rule_cap", "length_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name.replace('_', '-')} must be positive")
        if self.max_len < 0:
            raise ValueError("max-len must be non-negative")


class _Out:
    def __init__(self, structured: bool) -> None:
        self.structured = structured

    def emit(self, text: str, **record) -> None:
        if self.structured:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _need(cfg: RunConfig, attr: str) -> str:
    val = getattr(cfg, attr)
    if not val:
        raise RewritingError(f"--{attr} is required for {cfg.command}")
    return val


def cmd_generate(cfg: RunConfig, out: _Out, root_color: str = BLUE, classic: bool = False) -> int:
    graph = load_graph(_need(cfg, "graph"))
    coloring = validate_and_color(graph, root_color)
    if cfg.variant == "restricted":
        sys_, _ = generate_restricted(graph, coloring)
    else:
        sys_ = generate_system(graph, coloring)
    if classic:
        sys_ = rename(sys_, classic_names(graph, coloring))
    text = rwsfile.dumps(sys_, header=f"generated from {cfg.graph} ({cfg.variant})")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    counts: dict[str, int] = {}
    for r in sys_.rules:
        counts[r.tag or "other"] = counts.get(r.tag or "other", 0) + 1
    detail = ", ".join(f"{k}={v}" for k, v in counts.items())
    msg = f"{len(sys_)} rules ({detail})"
    if cfg.out:
        out.emit(msg, command="generate", rules=len(sys_), by_tag=counts, variant=cfg.variant)
    else:
        print(msg, file=sys.stderr)
    return EXIT_OK


def cmd_reduce(cfg: RunConfig, out: _Out, text: str) -> int:
    sys_ = rwsfile.load(_need(cfg, "system"))
    w = word(text)
    sys_.check_word(w)
    try:
        if cfg.seed is not None:
            nf = random_reduce(w, sys_, random.Random(cfg.seed), cfg.step_cap)
            steps = None
        else:
            nf, steps = reduce_counted(w, sys_, cfg.step_cap)
    except NonterminationError as exc:
        out.emit(f"inconclusive: {exc}", command="reduce", status="inconclusive", input=text)
        return EXIT_INCONCLUSIVE
    suffix = f"  ({steps} steps)" if steps is not None else ""
    out.emit(format_word(nf) + suffix, command="reduce", input=text, normal_form=format_word(nf), steps=steps)
    return EXIT_OK


def cmd_check(cfg: RunConfig, out: _Out, verbose: bool = False) -> int:
    sys_ = rwsfile.load(_need(cfg, "system"))
    step_cap = min(cfg.step_cap, DEFAULT_RESOLVE_CAP) if cfg.step_cap == DEFAULT_STEP_CAP else cfg.step_cap
    summary = check_complete(sys_, step_cap)
    for rep in summary.reports:
        if not rep.resolved or verbose:
            out.emit(rep.line(), command="check", status=rep.status, line=rep.line())
    out.emit(
        summary.summary_line(),
        command="check",
        verdict=summary.verdict,
        pairs=summary.total,
        resolved=summary.resolved_count,
        unresolved=len(summary.unresolved),
        inconclusive=len(summary.inconclusive),
    )
    return {"complete": EXIT_OK, "refuted": EXIT_REFUTED, "inconclusive": EXIT_INCONCLUSIVE}[summary.verdict]


def _default_precedence(sys_) -> Precedence:
    # earlier generators rank higher; g^-1 above g
    return Precedence.from_chain(x for g in sys_.alphabet for x in (Letter(g, -1), Letter(g, 1)))


def cmd_complete(cfg: RunConfig, out: _Out, prec_text: str | None) -> int:
    sys_ = rwsfile.load(_need(cfg, "system"))
    prec = parse_precedence(prec_text) if prec_text else _default_precedence(sys_)
    step_cap = DEFAULT_RESOLVE_CAP if cfg.step_cap == DEFAULT_STEP_CAP else cfg.step_cap
    try:
        done = complete(sys_, prec, cfg.rule_cap, step_cap)
    except NonterminationError as exc:
        out.emit(f"inconclusive: {exc}", command="complete", status="inconclusive")
        return EXIT_INCONCLUSIVE
    text = rwsfile.dumps(done, header=f"completed from {cfg.system}; precedence {prec.describe()}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit(f"{len(done)} rules written to {cfg.out}", command="complete", rules=len(done))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_growth(cfg: RunConfig, out: _Out) -> int:
    sys_ = rwsfile.load(_need(cfg, "system"))
    series = growth_series(sys_, cfg.max_len, verified=check_complete(sys_).complete)
    if series.warning:
        print(f"warning: {series.warning}", file=sys.stderr)
    for n, c in enumerate(series.counts):
        out.emit(f"{n}\t{c}", command="growth", length=n, count=c, verified=series.verified)
    return EXIT_OK


def cmd_order_check(cfg: RunConfig, out: _Out, root_color: str = BLUE) -> int:
    graph = load_graph(_need(cfg, "graph"))
    coloring = validate_and_color(graph, root_color)
    full = generate_system(graph, coloring)
    restricted, part = generate_restricted(graph, coloring)
    prec = lemma_precedence(graph, coloring)
    memo: dict = {}
    rpo_bad = [r for r in restricted.rules if not rpo_greater(r.lhs, r.rhs, prec)]
    psi_bad = [r for r in full.rules if not psi_greater(r.lhs, r.rhs, part, cfg.length_cap, memo)]
    for r in rpo_bad:
        out.emit(f"RPO-NOT-DECREASING {r}", command="order-check", kind="rpo", rule=str(r))
    for r in psi_bad:
        out.emit(f"PSI-NOT-DECREASING {r}", command="order-check", kind="psi", rule=str(r))
    ok = not rpo_bad and not psi_bad
    out.emit(
        f"precedence: {prec.describe()}\n"
        f"R': {len(restricted) - len(rpo_bad)}/{len(restricted)} rules RPO-decreasing; "
        f"R: {len(full) - len(psi_bad)}/{len(full)} rules psi-decreasing",
        command="order-check",
        ok=ok,
        restricted_rules=len(restricted),
        rpo_failures=len(rpo_bad),
        full_rules=len(full),
        psi_failures=len(psi_bad),
    )
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_decompose(cfg: RunConfig, out: _Out, text: str, classic: bool) -> int:
    graph = load_graph(_need(cfg, "graph"))
    coloring = validate_and_color(graph)
    sys_ = generate_system(graph, coloring)
    names = classic_names(graph, coloring) if classic else None
    if names:
        sys_ = rename(sys_, names)
    layout = TwoBundleLayout.from_graph(graph, coloring, names)
    dec = block_decompose(word(text), sys_, layout)
    out.emit(
        f"k={dec.k} {dec}",
        command="decompose",
        k=dec.k,
        blocks=[[format_word(p, "") for p in blk] for blk in dec.blocks],
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--structured", action="store_true", help="emit one JSON object per line")
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)

    p = _Parser(prog="bundle-rws", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="emit the rewriting system of a .gob graph")
    g.add_argument("--graph", required=True)
    g.add_argument("--out")
    g.add_argument("--variant", choices=("full", "restricted"), default="full")
    g.add_argument("--root-color", choices=("blue", "red"), default=BLUE)
    g.add_argument("--classic", action="store_true", help="two-vertex graphs: name letters a1, b1, x, c1, d1, y")

    r = sub.add_parser("reduce", parents=[common], help="print the normal form of a word")
    r.add_argument("--system", required=True)
    r.add_argument("--seed", type=int, help="follow a random rewriting sequence instead")
    r.add_argument("word")

    c = sub.add_parser("check", parents=[common], help="resolve all critical pairs")
    c.add_argument("--system", required=True)
    c.add_argument("--verbose", action="store_true", help="list resolved pairs too")

    k = sub.add_parser("complete", parents=[common], help="Knuth-Bendix completion")
    k.add_argument("--system", required=True)
    k.add_argument("--precedence", help="e.g. 'x^-1 > x > y^-1 > y'")
    k.add_argument("--rule-cap", type=int, default=DEFAULT_RULE_CAP)
    k.add_argument("--out")

    gr = sub.add_parser("growth", parents=[common], help="count normal forms by length")
    gr.add_argument("--system", required=True)
    gr.add_argument("--max-len", type=int, default=8)

    o = sub.add_parser("order-check", parents=[common], help="verify the termination orders rule by rule")
    o.add_argument("--graph", required=True)
    o.add_argument("--root-color", choices=("blue", "red"), default=BLUE)
    o.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP)

    d = sub.add_parser("decompose", parents=[common], help="block decomposition for a two-vertex graph")
    d.add_argument("--graph", required=True)
    d.add_argument("--classic", action="store_true", help="use a1, b1, x, c1, d1, y letter names")
    d.add_argument("word")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            system=getattr(args, "system", None),
            graph=getattr(args, "graph", None),
            out=getattr(args, "out", None),
            variant=getattr(args, "variant", "full"),
            max_len=getattr(args, "max_len", 8),
            step_cap=args.step_cap,
            rule_cap=getattr(args, "rule_cap", DEFAULT_RULE_CAP),
            length_cap=getattr(args, "length_cap", DEFAULT_LENGTH_CAP),
            seed=getattr(args, "seed", None),
            structured=args.structured,
        )
    except ValueError as exc:
        print(f"bundle-rws: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = _Out(cfg.structured)
    try:
        if cfg.command == "generate":
            return cmd_generate(cfg, out, args.root_color, args.classic)
        if cfg.command == "reduce":
            return cmd_reduce(cfg, out, args.word)
        if cfg.command == "check":
            return cmd_check(cfg, out, args.verbose)
        if cfg.command == "complete":
            return cmd_complete(cfg, out, args.precedence)
        if cfg.command == "growth":
            return cmd_growth(cfg, out)
        if cfg.command == "order-check":
            return cmd_order_check(cfg, out, args.root_color)
        if cfg.command == "decompose":
            return cmd_decompose(cfg, out, args.word, args.classic)
    except (RewritingError, ValueError, OSError) as exc:
        print(f"bundle-rws: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
