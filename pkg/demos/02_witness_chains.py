"""
Witness chains: verification, exact search, greedy construction
===============================================================
"""

from cubedep import CoordinateSplit, WitnessChain, greedy_chain, longest_chain_for_split, verify_chain
from cubedep.corpus import diagonal_table, random_table, triangular_table

split = CoordinateSplit([0], [1])

# A chain is valid when no diagonal value f(x_l, y_l) reappears strictly
# above the diagonal, f(x_m, y_n) with m < n.
diag = diagonal_table(5)
chain = WitnessChain(split, [(i,) for i in range(5)], [(i,) for i in range(5)])
print(verify_chain(diag, chain))

# Swapping two y's breaks it; the check reports the offending (l, m, n).
bad = WitnessChain(split, chain.xs, [(1,), (0,), (2,), (3,), (4,)])
print(verify_chain(diag, bad))

# Exact depth-first search, with the exactness flag.
res = longest_chain_for_split(triangular_table(8), split)
print("triangular(8):", res.length, "exact" if res.exact else "bound", res.nodes, "nodes")

# Greedy construction with shrinking candidate sets, against the exact optimum.
for seed in range(5):
    t = random_table((6, 6), 3, seed)
    g = greedy_chain(t, split, seed)
    best = longest_chain_for_split(t, split)
    print(f"seed {seed}: greedy {len(g)} / exact {best.length}")

# Three coordinates: splits are ordered, and (u, v) differs from (v, u).
t = random_table((3, 3, 3), 3, 1)
for s in (CoordinateSplit([0, 2], [1]), CoordinateSplit([1], [0, 2])):
    print(s.u, s.v, longest_chain_for_split(t, s).length)
