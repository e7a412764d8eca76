"""Triple colorings of chain indices and extraction of witness chains.

Given sequences ``xs``, ``ys`` over a split satisfying one of two patterns

* ``P5``: for all ``l < m < n``, ``f(x_l^y_l) != f(x_l^y_m)`` and
  ``f(x_l^y_m) == f(x_l^y_n)``;
* ``P4``: for all ``m < n``, ``f(x_m^y_m) != f(x_m^y_n)`` and
  ``f(x_m^y_m) != f(x_n^y_m)``;

:func:`extract_chain` passes to homogeneous subsets of two triple colorings
and returns a subsequence that is a valid witness chain.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .core import BudgetExhausted, CubeError, FunctionTable, SearchBudget
from .witness import CoordinateSplit, WitnessChain, compose, verify_chain

__all__ = [
    "P4",
    "P5",
    "PatternError",
    "ExtractionError",
    "PatternCheck",
    "PatternInput",
    "TripleColoring",
    "HomogeneousSet",
    "Extraction",
    "check_pattern5",
    "check_pattern4",
    "color_h",
    "color_hprime",
    "largest_homogeneous",
    "zero_homogeneous_quadruples",
    "extract_chain",
]

P5 = "p5"
P4 = "p4"


class PatternError(CubeError):
    """Sequences do not satisfy their declared pattern."""


class ExtractionError(RuntimeError):
    """Extraction produced an invalid chain. Always a bug."""


@dataclass(frozen=True)
class PatternCheck:
    ok: bool
    violation: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


class _Values:
    """Memoized ``f(x_a ^ y_b)`` over given sequences."""

    def __init__(self, table: FunctionTable, split: CoordinateSplit, xs, ys):
        if split.arity != table.arity:
            raise CubeError(f"split covers {split.arity} coordinates, table arity is {table.arity}")
        if len(xs) != len(ys):
            raise CubeError(f"xs has {len(xs)} entries, ys has {len(ys)}")
        self.table = table
        self.split = split
        self.xs = [tuple(x) for x in xs]
        self.ys = [tuple(y) for y in ys]
        self._cache: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.xs)

    def __call__(self, a: int, b: int) -> int:
        key = (a, b)
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = self.table(*compose(self.split, self.xs[a], self.ys[b]))
        return v


def check_pattern5(table: FunctionTable, split: CoordinateSplit, xs, ys) -> PatternCheck:
    f = _Values(table, split, xs, ys)
    if len(f) < 3:
        raise CubeError(f"pattern P5 needs at least 3 indices, got {len(f)}")
    for l, m, n in itertools.combinations(range(len(f)), 3):
        if f(l, l) == f(l, m) or f(l, m) != f(l, n):
            return PatternCheck(False, (l, m, n))
    return PatternCheck(True)


def check_pattern4(table: FunctionTable, split: CoordinateSplit, xs, ys) -> PatternCheck:
    f = _Values(table, split, xs, ys)
    if len(f) < 2:
        raise CubeError(f"pattern P4 needs at least 2 indices, got {len(f)}")
    for m, n in itertools.combinations(range(len(f)), 2):
        if f(m, m) == f(m, n) or f(m, m) == f(n, m):
            return PatternCheck(False, (m, n))
    return PatternCheck(True)


@dataclass(frozen=True)
class PatternInput:
    table: FunctionTable
    split: CoordinateSplit
    xs: tuple[tuple[int, ...], ...]
    ys: tuple[tuple[int, ...], ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(tuple(int(c) for c in x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(tuple(int(c) for c in y) for y in self.ys))
        if self.kind not in (P5, P4):
            raise CubeError(f"unknown pattern kind {self.kind!r}")
        check = check_pattern5 if self.kind == P5 else check_pattern4
        res = check(self.table, self.split, self.xs, self.ys)
        if not res:
            raise PatternError(f"sequences violate pattern {self.kind} at indices {res.violation}")

    def __len__(self):
        return len(self.xs)

    def values(self) -> _Values:
        return _Values(self.table, self.split, self.xs, self.ys)


@dataclass(frozen=True)
class TripleColoring:
    indices: tuple[int, ...]
    colors: dict[tuple[int, int, int], int] = field(compare=False)
    color_count: int

    @property
    def n(self) -> int:
        return len(self.indices)

    def __call__(self, a: int, b: int, c: int) -> int:
        return self.colors[tuple(sorted((a, b, c)))]


@dataclass(frozen=True)
class HomogeneousSet:
    indices: tuple[int, ...]
    color: int | None
    exact: bool = True

    def __len__(self):
        return len(self.indices)


def color_h(inp: PatternInput) -> TripleColoring:
    """Color 0 if ``f(x_l^y_l) == f(x_m^y_n)``, else 1."""
    f = inp.values()
    idx = tuple(range(len(f)))
    colors = {(l, m, n): int(f(l, l) != f(m, n)) for l, m, n in itertools.combinations(idx, 3)}
    return TripleColoring(idx, colors, 2)


def _hprime(f: _Values, l: int, m: int, n: int) -> int:
    # first listed equality wins
    if f(l, l) == f(m, n):
        return 1
    if f(l, l) == f(l, m):
        return 2
    if f(m, m) == f(l, m):
        return 3
    if f(m, m) == f(l, n):
        return 4
    if f(n, n) == f(l, m):
        return 5
    return 0


def color_hprime(inp: PatternInput, subset: Sequence[int] | None = None) -> TripleColoring:
    """Six-coloring of triples of ``subset`` (all indices by default)."""
    f = inp.values()
    idx = tuple(sorted(range(len(f)) if subset is None else set(subset)))
    if idx and (idx[0] < 0 or idx[-1] >= len(f)):
        raise CubeError(f"subset indices must lie in 0..{len(f) - 1}")
    colors = {t: _hprime(f, *t) for t in itertools.combinations(idx, 3)}
    return TripleColoring(idx, colors, 6)


def _largest_for_color(coloring: TripleColoring, color: int, counter, best: list) -> None:
    """Grow ``best = [indices, color]`` in place with larger ``color``-homogeneous sets."""
    colors = coloring.colors
    chosen: list[int] = []

    def grow(cands: list[int]) -> None:
        if len(chosen) > len(best[0]):
            best[:] = [tuple(chosen), color]
        for pos, v in enumerate(cands):
            if len(chosen) + len(cands) - pos <= len(best[0]):
                return
            counter.tick()
            rest = [
                w for w in cands[pos + 1:]
                if all(colors[(a, v, w)] == color for a in chosen)
            ]
            chosen.append(v)
            grow(rest)
            chosen.pop()

    grow(list(coloring.indices))


def largest_homogeneous(
    coloring: TripleColoring, want_color: int | None = None, budget: SearchBudget | None = None
) -> HomogeneousSet:
    """Maximum subset whose triples all share one color.

    Branch and bound over indices in increasing order; candidates are pruned
    as soon as one triple with an already chosen pair gets another color.
    Among maximum sets the lexicographically least is returned, and without
    ``want_color`` ties go to the smaller color.  Sets of size two or less
    contain no triple and are homogeneous for every color.
    """
    if coloring.n < 3:
        raise CubeError(f"need at least 3 indices, got {coloring.n}")
    budget = budget or SearchBudget()
    counter = budget.counter()
    colors = range(coloring.color_count) if want_color is None else [want_color]
    # two indices are vacuously homogeneous for any color
    best = [coloring.indices[:2], 0 if want_color is None else want_color]
    exact = True
    try:
        for c in colors:
            _largest_for_color(coloring, c, counter, best)
    except BudgetExhausted:
        exact = False
    return HomogeneousSet(best[0], best[1], exact)


def zero_homogeneous_quadruples(coloring: TripleColoring, color: int = 0) -> list[tuple[int, ...]]:
    """Every 4-subset whose four triples all have ``color``."""
    out = []
    for quad in itertools.combinations(coloring.indices, 4):
        if all(coloring.colors[t] == color for t in itertools.combinations(quad, 3)):
            out.append(quad)
    return out


@dataclass(frozen=True)
class Extraction:
    chain: WitnessChain
    indices: tuple[int, ...]
    case: str  # "i" (equal diagonals) or "ii" (distinct diagonals)
    input_length: int
    h_size: int
    refined_size: int
    exact: bool

    @property
    def length(self) -> int:
        return len(self.chain)

    def trace(self) -> dict:
        return {
            "input_length": self.input_length,
            "h_homogeneous_size": self.h_size,
            "pair_refined_size": self.refined_size,
            "case": self.case,
            "final_length": self.length,
            "indices": list(self.indices),
            "exact": self.exact,
        }


def extract_chain(inp: PatternInput, budget: SearchBudget | None = None) -> Extraction:
    """Turn a pattern P5 or P4 input into a valid witness chain.

    1. Find a largest ``h``-1-homogeneous index set ``H``.
    2. Group ``H`` by diagonal value ``f(x_m^y_m)``.  Diagonal equality is an
       equivalence relation, so a largest pair-homogeneous subset is either a
       largest class (all diagonals equal) or one index per class (all
       distinct); the larger one is kept, equal diagonals on ties.
    3. Equal diagonals: drop the least index.  Distinct diagonals: take a
       largest ``h'``-0-homogeneous subset and drop its greatest index.

    The end drops are needed because the arguments for the first and last
    positions use an index outside the returned chain.
    """
    check = check_pattern5 if inp.kind == P5 else check_pattern4
    res = check(inp.table, inp.split, inp.xs, inp.ys)
    if not res:
        raise PatternError(f"sequences violate pattern {inp.kind} at indices {res.violation}")
    if len(inp) < 3:
        # P4 allows length 2; no triple to color, the pattern itself gives a chain of length 1
        H = tuple(range(len(inp)))
        exact = True
    else:
        hom = largest_homogeneous(color_h(inp), 1, budget)
        H, exact = hom.indices, hom.exact

    f = inp.values()
    classes: dict[int, list[int]] = defaultdict(list)
    for i in H:
        classes[f(i, i)].append(i)
    largest_class = max(classes.values(), key=len)  # first largest in insertion order
    representatives = sorted(members[0] for members in classes.values())

    if len(largest_class) >= len(representatives):
        case = "i"
        refined = tuple(largest_class)
        picked = refined[1:]
    else:
        case = "ii"
        refined = tuple(representatives)
        if len(refined) >= 3:
            hom = largest_homogeneous(color_hprime(inp, refined), 0, budget)
            exact = exact and hom.exact
            S = hom.indices
        else:
            S = refined
        picked = S[:-1]
    if not picked:
        picked = refined[:1]

    chain = WitnessChain(inp.split, [inp.xs[i] for i in picked], [inp.ys[i] for i in picked])
    verdict = verify_chain(inp.table, chain)
    if not verdict:
        raise ExtractionError(
            f"extracted chain fails at {verdict.violation} (case {case}, indices {picked})"
        )
    return Extraction(chain, tuple(picked), case, len(inp), len(H), len(refined), exact)
