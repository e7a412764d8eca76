"""Naive reference implementations used only by the tests.

Everything here is plain Python over ``table.values`` with no pruning and no
shared code with the library searches.
"""

import itertools
import math


def value(table, point):
    idx = 0
    for x, n in zip(point, table.domain_sizes):
        idx = idx * n + x
    return table.values[idx]


def factors_through(table, box, j):
    points = list(itertools.product(*box))
    for p in points:
        for q in points:
            if p[j] == q[j] and value(table, p) != value(table, q):
                return False
    return True


def single_dependent(table, box):
    return any(factors_through(table, box, j) for j in range(len(box)))


def partition_ok(table, assignment, k):
    blocks = [[[x for x, b in enumerate(a) if b == lab] for lab in range(k)] for a in assignment]
    for labels in itertools.product(range(k), repeat=len(assignment)):
        box = [blocks[i][lab] for i, lab in enumerate(labels)]
        if all(box) and not single_dependent(table, box):
            return False
    return True


def has_partition(table, k):
    per_coord = [list(itertools.product(range(k), repeat=n)) for n in table.domain_sizes]
    return any(partition_ok(table, a, k) for a in itertools.product(*per_coord))


def k_min(table):
    k = 1
    while not has_partition(table, k):
        k += 1
    return k


def has_shared_partition(table, k):
    n = table.domain_sizes[0]
    return any(
        partition_ok(table, [a] * table.arity, k) for a in itertools.product(range(k), repeat=n)
    )


def splits(d):
    for mask in range(1, (1 << d) - 1):
        yield [i for i in range(d) if mask >> i & 1], [i for i in range(d) if not mask >> i & 1]


def join(u, v, x, y):
    p = [0] * (len(u) + len(v))
    for i, c in zip(u, x):
        p[i] = c
    for i, c in zip(v, y):
        p[i] = c
    return tuple(p)


def chain_ok(table, u, v, xs, ys):
    L = len(xs)
    for l in range(L):
        for m in range(L):
            for n in range(m + 1, L):
                if value(table, join(u, v, xs[l], ys[l])) == value(table, join(u, v, xs[m], ys[n])):
                    return False
    return True


def all_chains(table, u, v):
    """Every valid chain, grown pair by pair (valid chains are prefix closed)."""
    us = list(itertools.product(*(range(table.domain_sizes[i]) for i in u)))
    vs = list(itertools.product(*(range(table.domain_sizes[i]) for i in v)))
    frontier = [((), ())]
    while frontier:
        nxt = []
        for xs, ys in frontier:
            yield xs, ys
            for x in us:
                for y in vs:
                    xs2, ys2 = xs + (x,), ys + (y,)
                    if chain_ok(table, u, v, xs2, ys2):
                        nxt.append((xs2, ys2))
        frontier = nxt


def longest_for_split(table, u, v):
    return max(len(xs) for xs, _ in all_chains(table, u, v))


def longest(table):
    if table.arity < 2:
        return 1
    return max(longest_for_split(table, u, v) for u, v in splits(table.arity))


def largest_homogeneous_size(colors, indices, color=None):
    best = min(2, len(indices))
    for r in range(3, len(indices) + 1):
        for sub in itertools.combinations(indices, r):
            triples = [colors[t] for t in itertools.combinations(sub, 3)]
            if (color is None and len(set(triples)) == 1) or (
                color is not None and all(c == color for c in triples)
            ):
                best = r
                break
    return best


def n_emp(rows, k):
    """rows: (k_min, L_max) pairs."""
    ls = [L for km, L in rows if km > k]
    return max(ls) + 1 if ls else None


def prod(xs):
    return math.prod(xs)
