"""Instance generators: the two classical counterexample functions,
structured families with a known answer, and random / exhaustive supplies.

Random generators use ``numpy.random.default_rng(seed)`` (PCG64), so a seed
pins the output for a given numpy release line.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .core import CubeError, FunctionTable
from .dependence import GridPartition, verify_grid_partition
from .ramsey import P4, P5, PatternInput
from .witness import CoordinateSplit, compose

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "GeneratorSpec",
    "diagonal_table",
    "russell_table",
    "single_coordinate_table",
    "patchwork_table",
    "random_patchwork",
    "triangular_table",
    "constant_table",
    "random_table",
    "table_from_index",
    "enumerate_tables",
    "random_pattern_input",
]

DEFAULT_ENUMERATION_CAP = 2**24


def diagonal_table(n: int) -> FunctionTable:
    """``f(x, y) = 0`` if ``x == y`` else 1, on ``n x n``."""
    if n < 1:
        raise CubeError(f"n must be >= 1, got {n}")
    return FunctionTable.from_array(1 - np.eye(n, dtype=np.int64), codomain_size=2)


def russell_table(pairs: int) -> FunctionTable:
    """``f(x, y) = 0`` iff ``{x, y} == {2t, 2t+1}`` for some ``t``, on ``2p x 2p``.

    The diagonal is 1: ``{x, x}`` is never one of the two-element pairs.
    """
    if pairs < 1:
        raise CubeError(f"pair count must be >= 1, got {pairs}")
    n = 2 * pairs
    arr = np.ones((n, n), dtype=np.int64)
    for t in range(pairs):
        arr[2 * t, 2 * t + 1] = arr[2 * t + 1, 2 * t] = 0
    return FunctionTable.from_array(arr, codomain_size=2)


def triangular_table(n: int) -> FunctionTable:
    """``f(x, y) = 0`` if ``y <= x`` else 1.

    The identity sequences ``xs = ys = 0..n-1`` satisfy pattern P5 (rows are
    constant strictly above the diagonal), and extraction from them runs the
    equal-diagonal case end to end.
    """
    if n < 3:
        raise CubeError(f"n must be >= 3, got {n}")
    x, y = np.indices((n, n))
    return FunctionTable.from_array((y > x).astype(np.int64), codomain_size=2)


def constant_table(sizes: Sequence[int], value: int = 0, codomain_size: int | None = None) -> FunctionTable:
    m = value + 1 if codomain_size is None else codomain_size
    return FunctionTable(len(sizes), tuple(sizes), m, (value,) * math.prod(sizes))


def single_coordinate_table(
    sizes: Sequence[int], j: int, g: Sequence[int] | None = None, codomain_size: int | None = None
) -> FunctionTable:
    """``f = g o pi_j``; ``g`` defaults to the identity on ``range(sizes[j])``."""
    sizes = tuple(sizes)
    if not 0 <= j < len(sizes):
        raise CubeError(f"coordinate {j} out of range for arity {len(sizes)}")
    g = list(range(sizes[j])) if g is None else list(g)
    if len(g) != sizes[j]:
        raise CubeError(f"g has {len(g)} entries, coordinate {j} has {sizes[j]} elements")
    if any(v < 0 for v in g):
        raise CubeError("g values must be nonnegative")
    shape = [1] * len(sizes)
    shape[j] = sizes[j]
    arr = np.broadcast_to(np.array(g, dtype=np.int64).reshape(shape), sizes)
    m = max(g) + 1 if codomain_size is None else codomain_size
    return FunctionTable.from_array(arr, codomain_size=m)


def patchwork_table(
    partition: GridPartition,
    cells: Mapping[tuple[int, ...], tuple],
    codomain_size: int | None = None,
) -> FunctionTable:
    """Assemble ``f`` cell by cell from a grid partition.

    ``cells`` maps each nonempty cell's label tuple to either
    ``("const", c)`` or ``(j, g)`` with ``g`` indexed by coordinate-``j``
    element (a sequence over the whole domain or a dict over the block).
    The result is checked to verify under ``partition``.
    """
    sizes = tuple(len(a) for a in partition.assignment)
    arr = np.zeros(sizes, dtype=np.int64)
    for labels, box in partition.cells():
        spec = cells.get(tuple(labels))
        if spec is None:
            raise CubeError(f"no spec for nonempty cell {labels}")
        kind, arg = spec
        if kind == "const":
            arr[np.ix_(*box)] = arg
            continue
        j = kind
        if not isinstance(j, int) or not 0 <= j < len(sizes):
            raise CubeError(f"cell {labels}: bad coordinate {j!r}")
        for point in itertools.product(*box):
            try:
                arr[point] = arg[point[j]]
            except (KeyError, IndexError):
                raise CubeError(f"cell {labels}: g undefined at element {point[j]}") from None
    if (arr < 0).any():
        raise CubeError("cell values must be nonnegative")
    m = int(arr.max()) + 1 if codomain_size is None else codomain_size
    table = FunctionTable.from_array(arr, codomain_size=m)
    if not verify_grid_partition(table, partition):
        raise CubeError("patchwork does not verify under its partition")
    return table


def random_patchwork(
    sizes: Sequence[int], k: int, codomain_size: int, seed: int, const_prob: float = 0.25
) -> tuple[FunctionTable, GridPartition]:
    """Random ``k``-block patchwork; returns the table and its partition."""
    if k < 1 or codomain_size < 1:
        raise CubeError("k and codomain size must be >= 1")
    rng = np.random.default_rng(seed)
    assignment = [rng.integers(0, k, size=n).tolist() for n in sizes]
    part = GridPartition(k, assignment)
    cells = {}
    for labels, _ in part.cells():
        if rng.random() < const_prob:
            cells[labels] = ("const", int(rng.integers(0, codomain_size)))
        else:
            j = int(rng.integers(0, len(sizes)))
            cells[labels] = (j, rng.integers(0, codomain_size, size=sizes[j]).tolist())
    return patchwork_table(part, cells, codomain_size), part


def random_table(sizes: Sequence[int], codomain_size: int, seed: int | Sequence[int]) -> FunctionTable:
    sizes = tuple(sizes)
    if not sizes or min(sizes) < 1 or codomain_size < 1:
        raise CubeError("sizes and codomain size must be >= 1")
    rng = np.random.default_rng(seed)
    values = rng.integers(0, codomain_size, size=math.prod(sizes))
    return FunctionTable(len(sizes), sizes, codomain_size, tuple(values.tolist()))


def table_from_index(sizes: Sequence[int], codomain_size: int, index: int) -> FunctionTable:
    """The ``index``-th table in value-lexicographic order (last value fastest)."""
    sizes = tuple(sizes)
    N = math.prod(sizes)
    if not 0 <= index < codomain_size**N:
        raise CubeError(f"index {index} outside 0..{codomain_size**N - 1}")
    digits = []
    for _ in range(N):
        index, r = divmod(index, codomain_size)
        digits.append(r)
    return FunctionTable(len(sizes), sizes, codomain_size, tuple(reversed(digits)))


def enumerate_tables(
    sizes: Sequence[int], codomain_size: int, start: int = 0, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[FunctionTable]:
    """All ``m ** prod(sizes)`` tables in value-lexicographic order, from ``start``."""
    sizes = tuple(sizes)
    N = math.prod(sizes)
    total = codomain_size**N
    if total > cap:
        raise CubeError(f"{total} tables exceed the enumeration cap {cap}; sample instead")
    if start >= total:
        return iter(())
    first = table_from_index(sizes, codomain_size, start).values
    return (FunctionTable(len(sizes), sizes, codomain_size, v) for v in _odometer(first, codomain_size))


def _odometer(first: tuple[int, ...], m: int) -> Iterator[tuple[int, ...]]:
    digits = list(first)
    while True:
        yield tuple(digits)
        i = len(digits) - 1
        while i >= 0 and digits[i] == m - 1:
            digits[i] = 0
            i -= 1
        if i < 0:
            return
        digits[i] += 1


def random_pattern_input(
    kind: str,
    length: int,
    codomain_size: int,
    seed: int,
    sizes: Sequence[int] | None = None,
    split: CoordinateSplit | None = None,
) -> PatternInput:
    """Random table plus sequences planted to satisfy pattern P5 or P4.

    Off-pattern entries stay uniformly random, so the inputs are far from the
    structured families.
    """
    if codomain_size < 2:
        raise CubeError("patterns need at least two values")
    sizes = tuple(sizes) if sizes is not None else (length + 2, length + 2)
    split = split or CoordinateSplit([0], list(range(1, len(sizes))))
    rng = np.random.default_rng(seed)
    arr = rng.integers(0, codomain_size, size=sizes)

    def side(coords) -> list[tuple[int, ...]]:
        space = math.prod(sizes[i] for i in coords)
        if space < length:
            raise CubeError(f"side {coords} has only {space} tuples, need {length}")
        picks = rng.choice(space, size=length, replace=False)
        out = []
        for idx in picks.tolist():
            t = []
            for i in reversed(coords):
                idx, c = divmod(idx, sizes[i])
                t.append(c)
            out.append(tuple(reversed(t)))
        return out

    xs, ys = side(split.u), side(split.v)

    def put(a: int, b: int, value: int) -> None:
        arr[compose(split, xs[a], ys[b])] = value

    def other_than(*avoid: int) -> int:
        choices = [c for c in range(codomain_size) if c not in avoid]
        return int(rng.choice(choices))

    if kind == P5:
        for l in range(length):
            row = int(rng.integers(0, codomain_size))
            for m in range(l + 1, length):
                put(l, m, row)
            put(l, l, other_than(row))
    elif kind == P4:
        diag = rng.integers(0, codomain_size, size=length).tolist()
        for m in range(length):
            put(m, m, diag[m])
        for m, n in itertools.combinations(range(length), 2):
            put(m, n, other_than(diag[m]))
            put(n, m, other_than(diag[m]))
    else:
        raise CubeError(f"unknown pattern kind {kind!r}")
    table = FunctionTable.from_array(arr, codomain_size=codomain_size)
    return PatternInput(table, split, xs, ys, kind)


@dataclass(frozen=True)
class GeneratorSpec:
    """A family name plus its parameters; ``build()`` produces the table."""

    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> FunctionTable:
        p = self.params
        if self.family == "diagonal":
            return diagonal_table(p["n"])
        if self.family == "russell":
            return russell_table(p["pairs"])
        if self.family == "triangular":
            return triangular_table(p["n"])
        if self.family == "random":
            return random_table(p["sizes"], p["codomain"], p["seed"])
        if self.family == "patchwork":
            return random_patchwork(p["sizes"], p["k"], p["codomain"], p["seed"])[0]
        raise CubeError(f"unknown family {self.family!r}")
