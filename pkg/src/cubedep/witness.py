"""Witness chains over an ordered split of the coordinates.

For a split ``(u, v)`` and sequences ``xs`` (u-tuples), ``ys`` (v-tuples) of
length ``L``, the chain is valid when ``f(x_l^y_l) != f(x_m^y_n)`` for every
``l < L`` and every ``m < n < L``.  Equivalently: the set of diagonal values
``f(x_l^y_l)`` is disjoint from the set of strictly-upper values
``f(x_m^y_n)``.  The search code below leans on that reformulation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import BudgetExhausted, CubeError, FunctionTable, SearchBudget

__all__ = [
    "CoordinateSplit",
    "WitnessChain",
    "ChainCheck",
    "ChainSearch",
    "LongestChain",
    "all_splits",
    "compose",
    "split_matrix",
    "verify_chain",
    "longest_chain_for_split",
    "longest_chain",
    "greedy_chain",
]


@dataclass(frozen=True)
class CoordinateSplit:
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(sorted(int(i) for i in self.u)))
        object.__setattr__(self, "v", tuple(sorted(int(i) for i in self.v)))
        if not self.u or not self.v:
            raise CubeError("both sides of a split must be nonempty")
        if set(self.u) & set(self.v):
            raise CubeError(f"split sides overlap: {self.u} / {self.v}")
        if set(self.u) | set(self.v) != set(range(self.arity)):
            raise CubeError(f"split {self.u} / {self.v} does not cover 0..{self.arity - 1}")

    @property
    def arity(self) -> int:
        return len(self.u) + len(self.v)

    @property
    def mask(self) -> int:
        """Bit ``i`` set iff coordinate ``i`` is on the u side."""
        return sum(1 << i for i in self.u)

    @classmethod
    def from_mask(cls, mask: int, arity: int) -> "CoordinateSplit":
        if not 0 < mask < (1 << arity) - 1:
            raise CubeError(f"mask {mask} does not describe a split of {arity} coordinates")
        u = [i for i in range(arity) if mask >> i & 1]
        v = [i for i in range(arity) if not mask >> i & 1]
        return cls(u, v)

    def swapped(self) -> "CoordinateSplit":
        return CoordinateSplit(self.v, self.u)


def all_splits(arity: int) -> list[CoordinateSplit]:
    """Every ordered split, in increasing mask order."""
    return [CoordinateSplit.from_mask(m, arity) for m in range(1, (1 << arity) - 1)]


@dataclass(frozen=True)
class WitnessChain:
    split: CoordinateSplit
    xs: tuple[tuple[int, ...], ...]
    ys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(tuple(int(c) for c in x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(tuple(int(c) for c in y) for y in self.ys))
        if len(self.xs) != len(self.ys):
            raise CubeError(f"xs has {len(self.xs)} entries, ys has {len(self.ys)}")

    def __len__(self):
        return len(self.xs)

    def prefix(self, n: int) -> "WitnessChain":
        return WitnessChain(self.split, self.xs[:n], self.ys[:n])

    def to_json(self) -> dict:
        return {
            "u": list(self.split.u),
            "v": list(self.split.v),
            "xs": [list(x) for x in self.xs],
            "ys": [list(y) for y in self.ys],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "WitnessChain":
        if set(doc) != {"u", "v", "xs", "ys"}:
            raise CubeError("chain document needs exactly 'u', 'v', 'xs', 'ys'")
        return cls(CoordinateSplit(doc["u"], doc["v"]), doc["xs"], doc["ys"])


def compose(split: CoordinateSplit, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    """Interleave a u-tuple and a v-tuple into a full point."""
    if len(x) != len(split.u) or len(y) != len(split.v):
        raise CubeError(f"tuple lengths {len(x)}/{len(y)} do not match split {split.u}/{split.v}")
    point = [0] * split.arity
    for i, c in zip(split.u, x):
        point[i] = c
    for i, c in zip(split.v, y):
        point[i] = c
    return tuple(point)


def _check_split(table: FunctionTable, split: CoordinateSplit) -> None:
    if split.arity != table.arity:
        raise CubeError(f"split covers {split.arity} coordinates, table arity is {table.arity}")


def split_matrix(table: FunctionTable, split: CoordinateSplit) -> np.ndarray:
    """``f`` as a matrix: rows are u-tuples, columns v-tuples, both row-major."""
    _check_split(table, split)
    arr = table.array.transpose(split.u + split.v)
    rows = math.prod(table.domain_sizes[i] for i in split.u)
    return arr.reshape(rows, -1)


def _side_index(table: FunctionTable, coords: Sequence[int], tup: Sequence[int]) -> int:
    idx = 0
    for i, c in zip(coords, tup):
        n = table.domain_sizes[i]
        if not 0 <= c < n:
            raise CubeError(f"coordinate {i} value {c} out of range 0..{n - 1}")
        idx = idx * n + c
    return idx


def _side_tuple(table: FunctionTable, coords: Sequence[int], idx: int) -> tuple[int, ...]:
    out = []
    for i in reversed(coords):
        idx, c = divmod(idx, table.domain_sizes[i])
        out.append(c)
    return tuple(reversed(out))


@dataclass(frozen=True)
class ChainCheck:
    ok: bool
    violation: tuple[int, int, int] | None = None  # (l, m, n)

    def __bool__(self):
        return self.ok


def verify_chain(table: FunctionTable, chain: WitnessChain) -> ChainCheck:
    """Direct O(L^3) check of the chain condition."""
    _check_split(table, chain.split)
    split = chain.split
    for x, y in zip(chain.xs, chain.ys):
        if len(x) != len(split.u) or len(y) != len(split.v):
            raise CubeError(f"tuple lengths {len(x)}/{len(y)} do not match split {split.u}/{split.v}")
    L = len(chain)
    f = {}

    def value(a: int, b: int) -> int:
        key = (a, b)
        if key not in f:
            f[key] = table(*compose(split, chain.xs[a], chain.ys[b]))
        return f[key]

    for l in range(L):
        for m in range(L):
            for n in range(m + 1, L):
                if value(l, l) == value(m, n):
                    return ChainCheck(False, (l, m, n))
    return ChainCheck(True)


@dataclass(frozen=True)
class ChainSearch:
    chain: WitnessChain
    exact: bool
    nodes: int = 0

    @property
    def length(self) -> int:
        return len(self.chain)


def longest_chain_for_split(
    table: FunctionTable, split: CoordinateSplit, budget: SearchBudget | None = None
) -> ChainSearch:
    """Depth-first search for a longest valid chain on one split.

    Valid chains are closed under prefixes, so extending valid chains one
    pair at a time reaches all of them.  Pairs are tried in flat-index order
    of the composed point.  Branches are cut when the chain length plus the
    number of still-admissible y-columns cannot beat the incumbent.
    """
    budget = budget or SearchBudget()
    counter = budget.counter()
    M = split_matrix(table, split).tolist()
    n_rows, n_cols = len(M), len(M[0])
    m = table.codomain_size
    cap = min(n_rows, n_cols)

    sizes = table.domain_sizes
    strides = [math.prod(sizes[i + 1:]) for i in range(table.arity)]

    def flat(a: int, b: int) -> int:
        p = compose(split, _side_tuple(table, split.u, a), _side_tuple(table, split.v, b))
        return sum(c * s for c, s in zip(p, strides))

    pairs = sorted(itertools.product(range(n_rows), range(n_cols)), key=lambda ab: flat(*ab))

    chain_a: list[int] = []
    chain_b: list[int] = []
    used_a = [False] * n_rows
    used_b = [False] * n_cols
    diag_count = [0] * m
    upper_count = [0] * m
    best: list[tuple[int, int]] = [pairs[0]]

    def admissible_cols() -> int:
        count = 0
        for b in range(n_cols):
            if used_b[b]:
                continue
            if all(not diag_count[M[a][b]] for a in chain_a):
                count += 1
        return count

    def dfs() -> bool:
        nonlocal best
        L = len(chain_a)
        if L > len(best):
            best = list(zip(chain_a, chain_b))
            if L == cap:
                return True
        if L + min(n_rows - L, admissible_cols()) <= len(best):
            return False
        for a, b in pairs:
            if used_a[a] or used_b[b]:
                continue
            dv = M[a][b]
            if upper_count[dv]:
                continue
            new_upper = [M[x][b] for x in chain_a]
            if dv in new_upper or any(diag_count[w] for w in new_upper):
                continue
            counter.tick()
            chain_a.append(a)
            chain_b.append(b)
            used_a[a] = used_b[b] = True
            diag_count[dv] += 1
            for w in new_upper:
                upper_count[w] += 1
            done = dfs()
            for w in new_upper:
                upper_count[w] -= 1
            diag_count[dv] -= 1
            used_a[a] = used_b[b] = False
            chain_a.pop()
            chain_b.pop()
            if done:
                return True
            if L + min(n_rows - L, admissible_cols()) <= len(best):
                return False
        return False

    try:
        dfs()
        exact = True
    except BudgetExhausted:
        exact = False
    xs = [_side_tuple(table, split.u, a) for a, _ in best]
    ys = [_side_tuple(table, split.v, b) for _, b in best]
    return ChainSearch(WitnessChain(split, xs, ys), exact, counter.nodes)


@dataclass(frozen=True)
class LongestChain:
    best: WitnessChain | None
    per_split: dict[int, ChainSearch] = field(compare=False)
    exact: bool = True
    no_split: bool = False

    @property
    def length(self) -> int:
        """Longest chain length; 1 by convention when no split exists."""
        return len(self.best) if self.best is not None else 1

    @property
    def best_mask(self) -> int | None:
        return self.best.split.mask if self.best is not None else None


def longest_chain(table: FunctionTable, budget: SearchBudget | None = None) -> LongestChain:
    """Longest chain over all ordered splits.

    Ties go to the smallest split mask.  For ``d = 1`` there is no split; the
    result has ``best=None``, length 1 and ``no_split`` set.
    """
    if table.arity < 2:
        return LongestChain(None, {}, True, True)
    per_split = {}
    for split in all_splits(table.arity):
        per_split[split.mask] = longest_chain_for_split(table, split, budget)
    best = max(per_split.values(), key=lambda r: r.length)  # max keeps the first maximum
    exact = all(r.exact for r in per_split.values())
    return LongestChain(best.chain, per_split, exact)


def greedy_chain(table: FunctionTable, split: CoordinateSplit, seed: int = 0) -> WitnessChain:
    """Grow a chain while shrinking candidate row and column sets.

    After picking ``(x_m, y_m)`` the candidates become
    ``B = {x in B : f(x^y_m) != f(x_m^y_m)}`` and
    ``C = {y in C : f(x_m^y) != f(x_m^y_m)}``.  Each step takes, among pairs
    in ``B x C`` that keep the chain valid, one leaving the most candidates
    (seeded tie-break).  Stops when a set empties or no pair extends the
    chain.  The result is re-verified and trimmed to its longest valid prefix.
    """
    rng = random.Random(seed)
    M = split_matrix(table, split)
    B = list(range(M.shape[0]))
    C = list(range(M.shape[1]))
    chain_a: list[int] = []
    chain_b: list[int] = []
    diag: set[int] = set()
    upper: set[int] = set()

    while B and C:
        best_score = -1
        options = []
        for a in B:
            for b in C:
                dv = int(M[a, b])
                new_upper = {int(M[x, b]) for x in chain_a}
                if dv in upper or new_upper & (diag | {dv}):
                    continue
                score = int(np.count_nonzero(M[B, b] != dv)) + int(np.count_nonzero(M[a, C] != dv))
                if score > best_score:
                    best_score, options = score, [(a, b)]
                elif score == best_score:
                    options.append((a, b))
        if not options:
            break
        a, b = rng.choice(options)
        dv = int(M[a, b])
        upper |= {int(M[x, b]) for x in chain_a}
        diag.add(dv)
        chain_a.append(a)
        chain_b.append(b)
        B = [x for x in B if M[x, b] != dv]
        C = [y for y in C if M[a, y] != dv]

    if not chain_a:
        chain_a, chain_b = [0], [0]
    xs = [_side_tuple(table, split.u, a) for a in chain_a]
    ys = [_side_tuple(table, split.v, b) for b in chain_b]
    chain = WitnessChain(split, xs, ys)
    while len(chain) > 1 and not verify_chain(table, chain):
        chain = chain.prefix(len(chain) - 1)
    return chain
