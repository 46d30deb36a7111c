"""
Monotone costs
==============

Down-monotonic trees (weights grow away from some root) are solved by
greedy aligned intervals; up-monotonic trees (weights shrink away from the
root) by layer-wise ranking. Both are compared with the oracle.
"""

from fractions import Fraction

from treesearch import (
    GenSpec,
    classify_monotonic,
    decision_tree_cost,
    gen_instance,
    opt_cost,
    solve_down_monotonic,
    solve_up_monotonic,
)

for kind, solver in (("down", solve_down_monotonic), ("up", solve_up_monotonic)):
    for seed in range(4):
        t = gen_instance(GenSpec(kind, 12, 32, seed)).tree
        res = solver(t)
        cost = decision_tree_cost(res.decision_tree, t.weight)
        opt = opt_cost(t)[0]
        print(f"{kind:4} seed {seed}: class {classify_monotonic(t).kind:7} cost {cost:4} "
              f"opt {opt:4} ratio {float(Fraction(cost, opt)):.3f}")

# the greedy intervals themselves, on a small down-monotonic path
t = gen_instance(GenSpec("down", 5, 8, 1)).tree
res = solve_down_monotonic(t)
print("rounded weights:", dict(sorted(res.rounded.weight.items())))
print("intervals:", dict(sorted(res.f.items())))
