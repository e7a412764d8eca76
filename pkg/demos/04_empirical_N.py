"""
Empirical thresholds over whole table spaces
============================================

For each k, collect the tables that admit no k-block grid and record their
longest chain.  One more than the maximum is a lower bound for any chain
length threshold that would force a k-block grid.
"""

from cubedep import empirical_N, exclusivity_scan, write_report
from cubedep.harness import space_tables

rep = empirical_N((3, 3), 2, range(1, 4))
print(write_report(rep, "text").decode())

# Same question on a sampled space with three values and a 4x4 cube.
rep = empirical_N((4, 4), 3, range(1, 5), mode="random", samples=300, seed=0)
print(write_report(rep, "text").decode())

# The chain bound L <= k**d is a theorem; a scan is a cheap consistency check.
print(exclusivity_scan(space_tables((2, 2, 2), 2)).summary())
