"""
Edge queries and verification campaigns
=======================================

Searching with edge queries maps onto vertex search: every edge becomes a
midpoint vertex carrying its cost, and the original vertices get a weight
too large to ever be worth querying.
"""

from treesearch import (
    GenSpec,
    edge_opt_cost,
    gen_instance,
    opt_cost,
    run_campaign,
    serialize_edge_tree,
    subdivide_edge_tree,
)

et = gen_instance(GenSpec("edge-spider", 7, 5, seed=2)).tree
print(serialize_edge_tree(et))
sub = subdivide_edge_tree(et)
print("edge search:", edge_opt_cost(et))
print("vertex search on the subdivision (free final step):", opt_cost(sub, charge_final=False)[0])
print("vertex search, final query charged:", opt_cost(sub)[0])

# every guarantee as a randomised campaign against the oracle
for kind, kw in [("uniform", {}), ("down", {"rounded": True}), ("up", {}), ("kmono", {"k": 2}),
                 ("structure", {}), ("edge", {})]:
    rep = run_campaign(kind, 40, 9, seed=1, **kw)
    print(f"{kind:9} max ratio {float(rep.max_ratio):.3f} mean {rep.mean_ratio:.3f} "
          f"violations {len(rep.violations)}")

print(run_campaign("up", 5, 8, seed=4, rounded=True).table())
