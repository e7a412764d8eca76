"""
Partitions versus chains on small cubes
=======================================

Every function on a finite cube has two numbers attached to it here:

* ``k_min``: the fewest blocks per coordinate such that the function,
  restricted to every cell of the resulting grid, depends on one coordinate;
* ``L_max``: the length of the longest witness chain.

A k-block grid forces every chain to have length at most k**d.
"""

from cubedep import analyze_table, box_dependence, write_report
from cubedep.corpus import diagonal_table, russell_table, single_coordinate_table

# A projection depends on one coordinate everywhere: one block, no long chains.
proj = single_coordinate_table((4, 4), 0)
print(write_report(analyze_table(proj), "text").decode())

# The diagonal function f(x, y) = [x != y] mixes both coordinates on every
# 2x2 box that meets the diagonal.
diag = diagonal_table(4)
print(box_dependence(diag, [[0, 1], [0, 1]]))
print(box_dependence(diag, [[0, 1], [2, 3]]))  # off-diagonal block: constant

rep = analyze_table(diag)
print(write_report(rep, "text").decode())
# Big row blocks only hurt where they meet big column blocks, so rows
# {0,1},{2},{3} with columns {0},{1},{2,3} already work: k_min is 3, not 4.
print("certificate:", rep.partition.assignment)

# Forcing the same partition on both coordinates brings back k = n.
from cubedep.dependence import min_partition_size

print("shared-partition k_min:", min_partition_size(diag, shared=True).k_min)

# The pair-matching function: L_max reaches the full side length.
rus = analyze_table(russell_table(3))
print(f"russell(3): k_min={rus.k_min} L_max={rus.L_max}")
print("L_max <= k_min**d:", rus.L_max <= rus.k_min ** 2)
