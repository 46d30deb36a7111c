"""
k-monotonic costs
=================

A tree cut into monotone regions is solved region by region, and the
decision trees of the hanging regions are stitched under the boundary
vertices of the region above.
"""

from treesearch import (
    GenSpec,
    decision_tree_cost,
    gen_instance,
    opt_cost,
    partition_k_monotonic,
    serialize_tree,
    simulate,
    solve_k_monotonic,
)

inst = gen_instance(GenSpec("kmono", 12, 16, seed=8, k=3))
print(serialize_tree(inst.tree, inst.root, inst.part))

part = partition_k_monotonic(inst.tree, inst.root, inst.part)
res = solve_k_monotonic(inst.tree, part)
for s in res.solves:
    print(f"region {s.label}: depth {s.depth}, top {s.top}, {s.solver} solver, bound {s.bound}")

t = inst.tree
cost = decision_tree_cost(res.decision_tree, t.weight)
print("k =", part.k, "cost", cost, "opt", opt_cost(t)[0])

deep = max(t.vertices, key=lambda v: len(simulate(t, res.decision_tree, v).queries))
print(simulate(t, res.decision_tree, deep).format())

# without labels the greedy segmentation picks a root with few regions
print("greedy k:", partition_k_monotonic(t).k)
