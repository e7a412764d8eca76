"""
From row patterns to witness chains
===================================

Sequences satisfying pattern P5 (each row constant past the diagonal and
different on it) or pattern P4 (each diagonal value differs from its row
and column) contain long witness chains.  The extraction passes to a
homogeneous set of a 2-coloring of triples, refines by diagonal equality,
and in the distinct-diagonal case takes a homogeneous set of a 6-coloring.
"""

import json

from cubedep import CoordinateSplit, PatternInput, color_h, extract_chain, largest_homogeneous
from cubedep.corpus import diagonal_table, random_pattern_input, triangular_table
from cubedep.ramsey import color_hprime, zero_homogeneous_quadruples

split = CoordinateSplit([0], [1])
ident = [(i,) for i in range(10)]

tri = PatternInput(triangular_table(10), split, ident, ident, "p5")
print(json.dumps(extract_chain(tri).trace()))

diag = PatternInput(diagonal_table(6), split, ident[:6], ident[:6], "p4")
print(json.dumps(extract_chain(diag).trace()))

# On random planted inputs the h-coloring never has a 0-homogeneous 4-set,
# so the largest homogeneous set is 1-colored.
inp = random_pattern_input("p5", 10, 3, seed=4)
h = color_h(inp)
print("0-homogeneous quadruples:", zero_homogeneous_quadruples(h))
H = largest_homogeneous(h)
print("largest homogeneous:", H.indices, "color", H.color)

res = extract_chain(inp)
print(json.dumps(res.trace()))

# The 6-coloring on the refined set, tallied by color.
hp = color_hprime(inp, res.indices if res.case == "ii" else None)
counts = [0] * 6
for c in hp.colors.values():
    counts[c] += 1
print("h' color counts:", counts)
