"""``treesearch`` command line: solve, eval, simulate, classify, gen, verify."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from .down_monotonic import NotMonotonicError, solve_down_monotonic
from .harness import CAMPAIGN_KINDS, GEN_KINDS, GenSpec, gen_instance, run_campaign
from .k_monotonic import solve_k_monotonic
from .oracle import EdgeWeightedTree, OracleTooLarge, opt_cost, serialize_edge_tree
from .ranking import rank_tree, ranks_to_decision_tree
from .strategy import (
    DecisionTree,
    DecisionTreeFormatError,
    decision_tree_cost,
    format_dtree,
    parse_dtree,
    simulate,
)
from .tree_model import (
    InvalidTreeError,
    PartitionError,
    TreeFormatError,
    WeightedTree,
    classify_monotonic,
    components,
    parse_tree,
    partition_k_monotonic,
    rooted,
    serialize_tree,
)
from .up_monotonic import solve_up_monotonic

AUTO_EXACT_MAX = 14
ALGS = ("auto", "up", "down", "kmono", "rank", "exact")


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str, out: TextIO) -> None:
    if path is None or path == "-":
        out.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _load_tree(path: str):
    text = _read(path)
    try:
        return parse_tree(text)
    except TreeFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_dtree(path: str, t: WeightedTree) -> DecisionTree:
    try:
        d = parse_dtree(_read(path))
        d.validate(t)
    except (DecisionTreeFormatError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from None
    return d


def solve(parsed, alg: str) -> tuple[DecisionTree, str]:
    """Decision tree for ``parsed`` and the name of the algorithm that built it."""
    t = parsed.tree
    if alg == "auto":
        cls = classify_monotonic(t)
        if t.n <= AUTO_EXACT_MAX:
            alg = "exact"
        elif cls.is_down:
            alg = "down"
        elif cls.is_up:
            alg = "up"
        else:
            alg = "kmono"
    if alg == "exact":
        return opt_cost(t)[1], alg
    if alg == "down":
        return solve_down_monotonic(t).decision_tree, alg
    if alg == "up":
        return solve_up_monotonic(t).decision_tree, alg
    if alg == "rank":
        if len(set(t.weight.values())) != 1:
            raise CliError("rank needs uniform weights")
        root = parsed.root if parsed.root is not None else 1
        return ranks_to_decision_tree(t, rank_tree(rooted(t, root))), alg
    part = partition_k_monotonic(t, parsed.root, parsed.part)
    return solve_k_monotonic(t, part).decision_tree, f"kmono k={part.k}"


def _cmd_solve(args, out) -> int:
    parsed = _load_tree(args.inp)
    d, used = solve(parsed, args.alg)
    _write(args.out, format_dtree(d), out)
    msg = f"cost {decision_tree_cost(d, parsed.tree.weight)} alg {used}\n"
    (sys.stderr if args.out in (None, "-") else out).write(msg)
    return 0


def _cmd_eval(args, out) -> int:
    t = _load_tree(args.inp).tree
    d = _load_dtree(args.dtree, t)
    out.write(f"cost {decision_tree_cost(d, t.weight)}\n")
    return 0


def _ask(t: WeightedTree, q: int, cand: frozenset, inp: TextIO, out: TextIO) -> Optional[frozenset]:
    """Prompt until the answer for query ``q`` is consistent with ``cand``.

    Returns the new candidate set, or ``None`` when the target is found.
    """
    while True:
        out.write(f"query {q} {t.weight[q]}\n")
        out.flush()
        line = inp.readline()
        if not line:
            raise CliError("answer stream ended before the target was found")
        tok = line.split()
        if tok == ["found"]:
            return None
        if len(tok) == 2 and tok[0] == "toward" and tok[1].lstrip("-").isdigit():
            nb = int(tok[1])
            if nb not in t.adj[q]:
                out.write(f"error {nb} is not a neighbour of {q}\n")
                continue
            side = next(c for c in components(t, cand - {q}) if nb in c) if nb in cand else None
            if side is None:
                out.write(f"error answer toward {nb} contradicts earlier answers\n")
                continue
            return side
        out.write("error expected 'found' or 'toward <id>'\n")


def _interactive(t: WeightedTree, d: DecisionTree, inp: TextIO, out: TextIO) -> int:
    cand = frozenset(t.vertices)
    q, total = d.root, 0
    while True:
        total += t.weight[q]
        side = _ask(t, q, cand, inp, out)
        if side is None:
            out.write(f"found {q}\ntotal {total}\n")
            return 0
        cand = side
        (q,) = [c for c in d.children[q] if c in cand]


def _cmd_simulate(args, out) -> int:
    t = _load_tree(args.inp).tree
    d = _load_dtree(args.dtree, t)
    if args.interactive:
        return _interactive(t, d, sys.stdin, out)
    if args.target not in t.weight:
        raise CliError(f"target {args.target} is not a vertex")
    out.write(simulate(t, d, args.target).format())
    return 0


def _cmd_classify(args, out) -> int:
    parsed = _load_tree(args.inp)
    t = parsed.tree
    cls = classify_monotonic(t)
    out.write(f"kind {cls.kind}\n")
    out.write("up-roots" + "".join(f" {r}" for r in cls.up_roots) + "\n")
    out.write("down-roots" + "".join(f" {r}" for r in cls.down_roots) + "\n")
    try:
        part = partition_k_monotonic(t, parsed.root, parsed.part)
        src = "given" if parsed.part else "greedy"
        out.write(f"k {part.k} root {part.rooted.root} ({src})\n")
    except PartitionError as exc:
        out.write(f"k ? ({exc})\n")
    return 0


def _cmd_gen(args, out) -> int:
    inst = gen_instance(GenSpec(args.kind, args.n, args.maxw, args.seed, args.k))
    if isinstance(inst.tree, EdgeWeightedTree):
        text = serialize_edge_tree(inst.tree)
    else:
        text = serialize_tree(inst.tree, inst.root, inst.part)
    _write(args.out, text, out)
    return 0


def _cmd_verify(args, out) -> int:
    rep = run_campaign(args.kind, args.trials, args.nmax, args.seed,
                       max_weight=args.maxw, rounded=args.rounded, k=args.k)
    out.write(rep.lines() if args.lines else rep.table())
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treesearch", description="Adaptive search on node-weighted trees.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="build a decision tree")
    s.add_argument("--alg", choices=ALGS, default="auto")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_solve)

    s = sub.add_parser("eval", help="worst-case cost of a decision tree")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--dtree", required=True)
    s.set_defaults(func=_cmd_eval)

    s = sub.add_parser("simulate", help="run a decision tree against a target")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--dtree", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--target", type=int)
    g.add_argument("--interactive", action="store_true")
    s.set_defaults(func=_cmd_simulate)

    s = sub.add_parser("classify", help="monotonicity witnesses and k")
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--kind", choices=GEN_KINDS, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--maxw", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("verify", help="randomised campaign against the exact oracle")
    s.add_argument("--kind", choices=CAMPAIGN_KINDS, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--nmax", type=int, default=12)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--maxw", type=int, default=16)
    s.add_argument("--rounded", action="store_true")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--lines", action="store_true", help="machine-readable trial lines")
    s.set_defaults(func=_cmd_verify)
    return p


def run_cli(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (CliError, InvalidTreeError, NotMonotonicError, PartitionError, OracleTooLarge, ValueError) as exc:
        sys.stderr.write(f"treesearch: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli())
