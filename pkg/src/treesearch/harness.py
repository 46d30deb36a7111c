"""Random instance generators and verification campaigns against the oracle.

Every campaign is a pure function of ``(kind, trials, n_max, seed)`` and its
options: per-trial seeds are drawn from one ``numpy.random.SeedSequence``,
and each instance is rebuilt from its own seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .down_monotonic import solve_down_monotonic
from .k_monotonic import solve_k_monotonic
from .oracle import EDGE_CAP, VERTEX_CAP, EdgeWeightedTree, edge_opt_cost, opt_cost, subdivide_edge_tree
from .ranking import rank_tree, ranks_to_decision_tree
from .strategy import (
    DecisionTree,
    decision_tree_cost,
    decision_tree_to_esf,
    esf_to_decision_tree,
    simulate,
    validate_esf,
)
from .tree_model import (
    WeightedTree,
    classify_monotonic,
    components,
    partition_k_monotonic,
    rooted,
    round_weights,
    validate_partition,
)
from .up_monotonic import decompose_layers, is_structured, solve_up_monotonic, structure_decision_tree

GEN_KINDS = ("uniform", "up", "down", "kmono", "spider", "edge-spider", "edge")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    max_weight: int = 16
    seed: int = 0
    k: int = 2


@dataclass(frozen=True)
class Instance:
    """A generated tree plus what the generator knows about it."""

    tree: Union[WeightedTree, EdgeWeightedTree]
    root: Optional[int] = None
    part: Optional[dict] = None


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def _draw(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform in ``[lo, hi]``, or with probability one half a power of two in that range."""
    if rng.random() < 0.5:
        pows = [1 << e for e in range(hi.bit_length()) if lo <= 1 << e <= hi]
        if pows:
            return int(pows[rng.integers(len(pows))])
    return int(rng.integers(lo, hi + 1))


def _shape(rng, n: int) -> tuple[list[tuple[int, int]], int]:
    """Random recursive tree with shuffled labels; returns edges and the root."""
    perm = [int(x) + 1 for x in rng.permutation(n)]
    edges = [(perm[int(rng.integers(i))], perm[i]) for i in range(1, n)]
    return edges, perm[0]


def _depths(edges, root, n):
    adj = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent, depth, order = {root: None}, {root: 0}, [root]
    for u in order:
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w], depth[w] = u, depth[u] + 1
                order.append(w)
    return parent, depth, order


def _spider_legs(rng, n_edges: int, max_leg: int) -> list[int]:
    legs = []
    left = n_edges
    while left:
        leg = int(rng.integers(1, min(max_leg, left) + 1))
        legs.append(leg)
        left -= leg
    return legs


def _spider_edges(legs: list[int]) -> list[tuple[int, int]]:
    edges, nxt = [], 2
    for leg in legs:
        prev = 1
        for _ in range(leg):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return edges


def gen_instance(spec: GenSpec) -> Instance:
    if spec.n < 1:
        raise ValueError("instance needs at least one vertex")
    if spec.max_weight < 1:
        raise ValueError("max_weight must be positive")
    if spec.kind not in GEN_KINDS:
        raise ValueError(f"unknown instance kind {spec.kind!r}")
    rng = _rng(spec.seed)
    n, hi = spec.n, spec.max_weight

    if spec.kind in ("edge", "edge-spider"):
        n_edges = n - 1
        if spec.kind == "edge-spider":
            edges = _spider_edges(_spider_legs(rng, n_edges, 3))
        else:
            edges, _ = _shape(rng, n)
        return Instance(EdgeWeightedTree.from_edges(n, [(u, v, _draw(rng, 1, hi)) for u, v in edges]))

    if spec.kind == "spider":
        edges, root = _spider_edges(_spider_legs(rng, n - 1, max(1, (n - 1) // 2))), 1
    else:
        edges, root = _shape(rng, n)
    parent, depth, order = _depths(edges, root, n)
    w: dict[int, int] = {}
    part = None

    if spec.kind == "uniform":
        c = _draw(rng, 1, hi)
        w = {v: c for v in order}
    elif spec.kind in ("up", "spider"):
        for v in order:
            w[v] = _draw(rng, 1, hi if parent[v] is None else w[parent[v]])
    elif spec.kind == "down":
        for v in order:
            w[v] = _draw(rng, 1 if parent[v] is None else w[parent[v]], hi)
    elif spec.kind == "kmono":
        # k depth bands, alternating non-decreasing / non-increasing from the root
        height = max(depth.values())
        band = {v: min(spec.k - 1, depth[v] * spec.k // (height + 1)) for v in order}
        part = {}
        for v in order:
            p = parent[v]
            if p is None or band[p] != band[v]:
                w[v] = _draw(rng, 1, hi)
                part[v] = f"b{band[v]}v{v}"
            else:
                lo, up = (w[p], hi) if band[v] % 2 == 0 else (1, w[p])
                w[v] = _draw(rng, lo, up)
                part[v] = part[p]
    return Instance(WeightedTree(w, edges), root, part)


# --------------------------------------------------------------------------
# Campaigns


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    n: int
    alg: int
    opt: int
    ratio: Fraction
    bound: Fraction
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class CampaignReport:
    kind: str
    options: dict
    trials: tuple = field(default_factory=tuple)

    @property
    def violations(self) -> list[TrialRecord]:
        return [r for r in self.trials if not r.ok]

    @property
    def max_ratio(self) -> Fraction:
        return max((r.ratio for r in self.trials), default=Fraction(0))

    @property
    def mean_ratio(self) -> float:
        return float(sum(r.ratio for r in self.trials) / len(self.trials)) if self.trials else 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def lines(self) -> str:
        out = [f"trial {r.index} {r.seed} {r.n} {r.alg} {r.opt} {float(r.ratio):.6f}" for r in self.trials]
        return "\n".join(out) + "\n"

    def table(self) -> str:
        opts = " ".join(f"{k}={v}" for k, v in sorted(self.options.items()))
        head = f"{'trial':>5} {'seed':>10} {'n':>3} {'alg':>7} {'opt':>7} {'ratio':>9} {'bound':>7}  status"
        rows = [f"campaign {self.kind} {opts}", head]
        for r in self.trials:
            status = "ok" if r.ok else "VIOLATION"
            if r.note:
                status += f" ({r.note})"
            rows.append(f"{r.index:>5} {r.seed:>10} {r.n:>3} {r.alg:>7} {r.opt:>7} "
                        f"{float(r.ratio):>9.4f} {float(r.bound):>7.2f}  {status}")
        rows.append(f"max ratio {float(self.max_ratio):.6f}  mean ratio {self.mean_ratio:.6f}  "
                    f"violations {len(self.violations)}/{len(self.trials)}")
        return "\n".join(rows) + "\n"


CAMPAIGN_KINDS = ("uniform", "down", "up", "kmono", "rounding", "structure", "edge", "convert")


def _trial_seeds(seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials)]


def _ratio(a: int, b: int) -> Fraction:
    return Fraction(a, b) if b else Fraction(int(a == 0))


def random_decision_tree(t: WeightedTree, rng: np.random.Generator) -> DecisionTree:
    """Uniformly random query in every candidate set."""
    children: dict[int, list[int]] = {}

    def build(cand: frozenset) -> int:
        vs = sorted(cand)
        q = vs[int(rng.integers(len(vs)))]
        children[q] = [build(c) for c in components(t, cand - {q})]
        return q

    root = build(frozenset(t.vertices))
    return DecisionTree(root, children)


def _trial(kind: str, idx: int, seed: int, n_max: int, max_weight: int,
           rounded: bool, k: int) -> TrialRecord:
    rng = _rng(seed)
    n = int(rng.integers(1, n_max + 1))
    note = ""

    if kind == "edge":
        gk = "edge-spider" if idx % 2 else "edge"
        et = gen_instance(GenSpec(gk, n, max_weight, seed)).tree
        alg = edge_opt_cost(et)
        opt = opt_cost(subdivide_edge_tree(et), charge_final=False)[0]
        return TrialRecord(idx, seed, n, alg, opt, _ratio(alg, opt), Fraction(1), alg == opt, gk)

    gen_kind = {"uniform": "uniform", "down": "down", "up": "up", "kmono": "kmono",
                "rounding": "up", "structure": "up", "convert": "up"}[kind]
    inst = gen_instance(GenSpec(gen_kind, n, max_weight, seed, k))
    t = inst.tree
    if kind in ("rounding", "convert"):
        # arbitrary weights on the generated shape
        t = t.with_weights({v: _draw(rng, 1, max_weight) for v in t.vertices})
    if rounded or kind == "structure":
        t = round_weights(t)

    if kind == "convert":
        d = random_decision_tree(t, rng)
        f = decision_tree_to_esf(t, d)
        alg = decision_tree_cost(d, t.weight)
        opt = max(simulate(t, d, v).total_cost for v in t.vertices)
        ok = alg == opt and bool(validate_esf(t, f)) and esf_to_decision_tree(t, f) == d
        return TrialRecord(idx, seed, n, alg, opt, _ratio(alg, opt), Fraction(1), ok)

    opt, opt_tree = opt_cost(t)
    if kind == "uniform":
        d = ranks_to_decision_tree(t, rank_tree(rooted(t, inst.root)))
        alg, bound = decision_tree_cost(d, t.weight), Fraction(1)
        ok = alg == opt
    elif kind == "down":
        res = solve_down_monotonic(t)
        alg = decision_tree_cost(res.decision_tree, t.weight)
        bound = Fraction(1) if rounded else Fraction(2)
        ok = bool(validate_esf(res.rounded, res.f)) and (alg == opt if rounded else alg <= 2 * opt)
    elif kind == "up":
        res = solve_up_monotonic(t)
        alg = decision_tree_cost(res.decision_tree, t.weight)
        bound = Fraction(4) if rounded else Fraction(8)
        ok = alg <= bound * opt and decision_tree_cost(res.decision_tree, res.rounded.weight) <= res.bound
    elif kind == "kmono":
        part = partition_k_monotonic(t, inst.root, inst.part)
        res = solve_k_monotonic(t, part)
        alg = decision_tree_cost(res.decision_tree, t.weight)
        bound = Fraction(8 * part.k)
        ok = alg <= bound * opt and res.depth <= part.k
        note = f"k={part.k} depth={res.depth}"
    elif kind == "rounding":
        rt = round_weights(t)
        _, rd = opt_cost(rt)
        alg = decision_tree_cost(rd, t.weight)
        bound = Fraction(2)
        ok = alg <= 2 * opt
    elif kind == "structure":
        sd = structure_decision_tree(t, opt_tree)
        alg = decision_tree_cost(sd, t.weight)
        layers = decompose_layers(rooted(t, min(classify_monotonic(t).up_roots)))
        bound = Fraction(2)
        ok = sd.is_valid(t) and is_structured(layers, sd) and alg <= 2 * opt
    else:
        raise ValueError(f"unknown campaign kind {kind!r}")
    return TrialRecord(idx, seed, t.n, alg, opt, _ratio(alg, opt), bound, ok, note)


def run_campaign(kind: str, trials: int, n_max: int, seed: int, *, max_weight: int = 16,
                 rounded: bool = False, k: int = 2) -> CampaignReport:
    """Generate, solve, brute-force and compare ``trials`` instances.

    A trial is a violation when its ratio exceeds the proven bound (8 for
    up, 4 when rounded; 2 for down; 8k for kmono; 2 for rounding and
    structuring), or, for the exactness checks (ranking on uniform trees,
    down-monotonic on rounded trees, the edge/vertex reduction and the
    conversion round trip), when the two sides differ.
    """
    if kind not in CAMPAIGN_KINDS:
        raise ValueError(f"unknown campaign kind {kind!r}; expected one of {CAMPAIGN_KINDS}")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    cap = min(EDGE_CAP + 1, (VERTEX_CAP + 1) // 2) if kind == "edge" else VERTEX_CAP
    if n_max > cap:
        raise ValueError(f"n_max {n_max} exceeds the oracle cap {cap} for {kind!r} campaigns")
    opts = {"trials": trials, "nmax": n_max, "seed": seed, "maxw": max_weight}
    if kind in ("down", "up"):
        opts["rounded"] = rounded
    if kind == "kmono":
        opts["k"] = k
    records = tuple(_trial(kind, i, s, n_max, max_weight, rounded, k)
                    for i, s in enumerate(_trial_seeds(seed, trials)))
    return CampaignReport(kind, opts, records)
