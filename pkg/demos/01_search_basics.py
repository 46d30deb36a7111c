"""
Searching a weighted path
=========================

A target hides in a tree. Querying vertex v costs w(v) and the answer is
either "found" or the neighbour of v on the way to the target.
"""

from treesearch import DecisionTree, WeightedTree, decision_tree_cost, opt_cost, simulate

# path 1 - 2 - 3 with query costs 4, 2, 1
t = WeightedTree({1: 4, 2: 2, 3: 1}, [(1, 2), (2, 3)])

# walk along the path from the heavy end
chain = DecisionTree(1, {1: [2], 2: [3]})
print(simulate(t, chain, 3).format())
print("worst case of the chain:", decision_tree_cost(chain, t.weight))

# the exact oracle starts in the middle instead
best, d = opt_cost(t)
print("optimal worst case:", best, "first query:", d.root)
for target in t.vertices:
    print(" target", target, "costs", simulate(t, d, target).total_cost)
