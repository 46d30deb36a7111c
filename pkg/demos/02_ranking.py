"""
Unit weights: optimal vertex ranking
====================================

With every weight equal to 1 the bottom-up vertex extension operator gives
an optimal strategy. Here we check it against the exact oracle.
"""

import numpy as np

from treesearch import WeightedTree, decision_tree_cost, opt_cost, rank_tree, ranks_to_decision_tree, rooted

rng = np.random.default_rng(3)

n = 12
edges = [(int(rng.integers(1, v)), v) for v in range(2, n + 1)]
t = WeightedTree({v: 1 for v in range(1, n + 1)}, edges)

ranks = rank_tree(rooted(t, 1))
print("ranks:", dict(sorted(ranks.rank.items())))

d = ranks_to_decision_tree(t, ranks)
print("ranking cost", decision_tree_cost(d, t.weight), "oracle", opt_cost(t)[0])
