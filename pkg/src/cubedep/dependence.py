"""Single-coordinate dependence on boxes and grid partitions of the cube.

A grid partition assigns every element of every coordinate domain a block
label ``0..k-1``.  Each choice of one label per coordinate picks out a cell
(a box), and the partition is valid when ``f`` restricted to every nonempty
cell depends on at most one coordinate.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import BudgetExhausted, CubeError, FunctionTable, SearchBudget

__all__ = [
    "CONSTANT",
    "SINGLE",
    "ESSENTIAL",
    "CellDependence",
    "GridPartition",
    "PartitionCheck",
    "PartitionSearch",
    "MinPartition",
    "normalize_box",
    "box_dependence",
    "verify_grid_partition",
    "find_grid_partition",
    "min_partition_size",
    "greedy_partition",
    "singleton_partition",
]

CONSTANT = "constant"
SINGLE = "single"
ESSENTIAL = "essential"

Box = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CellDependence:
    status: str
    coord: int | None
    factoring_coords: frozenset[int]
    certificate: dict[int, int] | None = field(default=None, compare=False)

    @property
    def single_dependent(self) -> bool:
        return self.status != ESSENTIAL


@dataclass(frozen=True)
class GridPartition:
    block_count: int
    assignment: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(tuple(int(b) for b in a) for a in self.assignment))
        if self.block_count < 1:
            raise CubeError(f"block_count must be >= 1, got {self.block_count}")
        for i, labels in enumerate(self.assignment):
            for x, b in enumerate(labels):
                if not 0 <= b < self.block_count:
                    raise CubeError(f"coordinate {i} element {x}: label {b} outside 0..{self.block_count - 1}")

    def blocks(self, coord: int) -> list[tuple[int, ...]]:
        """Members of each block of one coordinate, indexed by label."""
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.assignment[coord]):
            out[b].append(x)
        return [tuple(b) for b in out]

    def cells(self):
        """Yield ``(labels, box)`` for every cell with all factors nonempty."""
        per_coord = [self.blocks(i) for i in range(len(self.assignment))]
        for labels in itertools.product(range(self.block_count), repeat=len(per_coord)):
            box = tuple(per_coord[i][b] for i, b in enumerate(labels))
            if all(box):
                yield labels, box

    def used_blocks(self) -> int:
        return max(len(set(a)) for a in self.assignment)

    def to_json(self) -> dict:
        return {"block_count": self.block_count, "assignment": [list(a) for a in self.assignment]}

    @classmethod
    def from_json(cls, doc: dict | str | bytes) -> "GridPartition":
        if not isinstance(doc, dict):
            doc = json.loads(doc)
        if set(doc) != {"block_count", "assignment"}:
            raise CubeError("partition document needs exactly 'block_count' and 'assignment'")
        return cls(doc["block_count"], doc["assignment"])


def singleton_partition(table: FunctionTable) -> GridPartition:
    k = max(table.domain_sizes)
    return GridPartition(k, [tuple(range(n)) for n in table.domain_sizes])


def normalize_box(table: FunctionTable, box: Sequence[Sequence[int]]) -> Box:
    if len(box) != table.arity:
        raise CubeError(f"box has {len(box)} factors, table arity is {table.arity}")
    out = []
    for i, (factor, n) in enumerate(zip(box, table.domain_sizes)):
        factor = tuple(sorted(set(int(x) for x in factor)))
        if not factor:
            raise CubeError(f"box factor {i} is empty")
        if factor[0] < 0 or factor[-1] >= n:
            raise CubeError(f"box factor {i} has elements outside 0..{n - 1}")
        out.append(factor)
    return tuple(out)


def _factoring_coords(sub: np.ndarray) -> list[int]:
    coords = []
    for j in range(sub.ndim):
        rows = np.moveaxis(sub, j, 0).reshape(sub.shape[j], -1)
        if (rows == rows[:, :1]).all():
            coords.append(j)
    return coords


def _is_single_dependent(sub: np.ndarray) -> bool:
    for j in range(sub.ndim):
        rows = np.moveaxis(sub, j, 0).reshape(sub.shape[j], -1)
        if (rows == rows[:, :1]).all():
            return True
    return False


def box_dependence(table: FunctionTable, box: Sequence[Sequence[int]]) -> CellDependence:
    """Classify ``f`` on a box as constant, single-coordinate, or essential.

    Coordinate ``j`` factors when any two points of the box agreeing in
    coordinate ``j`` get the same value.  The certificate maps the
    coordinate-``j`` values of the box to the value of ``f``.
    """
    box = normalize_box(table, box)
    sub = table.array[np.ix_(*box)]
    coords = _factoring_coords(sub)
    if not coords:
        return CellDependence(ESSENTIAL, None, frozenset())
    j = coords[0]
    first = np.moveaxis(sub, j, 0).reshape(sub.shape[j], -1)[:, 0]
    certificate = {x: int(v) for x, v in zip(box[j], first)}
    status = CONSTANT if (sub == sub.flat[0]).all() else SINGLE
    return CellDependence(status, j, frozenset(coords), certificate)


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    failing_cells: tuple[tuple[int, ...], ...] = ()

    def __bool__(self):
        return self.ok


def _check_partition_shape(table: FunctionTable, part: GridPartition) -> None:
    if len(part.assignment) != table.arity:
        raise CubeError(f"partition covers {len(part.assignment)} coordinates, table arity is {table.arity}")
    for i, (labels, n) in enumerate(zip(part.assignment, table.domain_sizes)):
        if len(labels) != n:
            raise CubeError(f"coordinate {i}: partition assigns {len(labels)} elements, domain has {n}")


def verify_grid_partition(table: FunctionTable, part: GridPartition) -> PartitionCheck:
    _check_partition_shape(table, part)
    arr = table.array
    failing = tuple(
        labels for labels, box in part.cells() if not _is_single_dependent(arr[np.ix_(*box)])
    )
    return PartitionCheck(not failing, failing)


@dataclass(frozen=True)
class PartitionSearch:
    partition: GridPartition | None
    exhausted: bool  # budget ran out before the search finished
    nodes: int

    @property
    def proven_absent(self) -> bool:
        return self.partition is None and not self.exhausted


def find_grid_partition(
    table: FunctionTable, k: int, budget: SearchBudget | None = None, shared: bool = False
) -> PartitionSearch:
    """Exact backtracking search for a valid ``k``-block grid partition.

    Elements are assigned coordinate by coordinate in index order.  Labels
    follow restricted-growth order per coordinate (element 0 gets block 0,
    a new label only after all smaller ones are in use), so the first
    partition found is the lexicographically least canonical one.  Cells are
    checked incrementally while the last coordinate is filled in: a
    sub-box that already depends on two coordinates cannot be repaired by
    adding points.

    With ``shared=True`` every coordinate must use the same partition
    (all domain sizes equal).  This is stricter: the diagonal table on
    ``n x n`` needs ``n`` shared blocks but only ``ceil(n/2) + 1`` free ones
    once ``n >= 4``.
    """
    if k < 1:
        raise CubeError(f"k must be >= 1, got {k}")
    budget = budget or SearchBudget()
    if shared:
        return _find_shared_partition(table, k, budget)
    counter = budget.counter()
    d = table.arity
    sizes = table.domain_sizes
    arr = table.array
    labels = [[0] * n for n in sizes]
    # members[i][b]: elements of coordinate i currently in block b
    members = [[[] for _ in range(k)] for _ in range(d)]
    last = d - 1
    order = [(i, x) for i in range(d) for x in range(sizes[i])]

    def cells_ok(b_last: int) -> bool:
        col = members[last][b_last]
        for combo in itertools.product(range(k), repeat=last):
            box = [members[i][b] for i, b in enumerate(combo)]
            if not all(box):
                continue
            box.append(col)
            if not _is_single_dependent(arr[np.ix_(*box)]):
                return False
        return True

    def search(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        i, x = order[pos]
        if x == 0:
            used = 0
        top = min(used + 1, k)
        for b in range(top):
            counter.tick()
            labels[i][x] = b
            members[i][b].append(x)
            ok = i != last or cells_ok(b)
            if ok and search(pos + 1, max(used, b + 1)):
                return True
            members[i][b].pop()
        return False

    try:
        found = search(0, 0)
    except BudgetExhausted:
        return PartitionSearch(None, True, counter.nodes)
    part = GridPartition(k, labels) if found else None
    return PartitionSearch(part, False, counter.nodes)


def _find_shared_partition(table: FunctionTable, k: int, budget: SearchBudget) -> PartitionSearch:
    if len(set(table.domain_sizes)) != 1:
        raise CubeError("a shared partition needs all domain sizes equal")
    counter = budget.counter()
    d = table.arity
    n = table.domain_sizes[0]
    arr = table.array
    labels = [0] * n
    members: list[list[int]] = [[] for _ in range(k)]

    def cells_ok(b: int) -> bool:
        for combo in itertools.product(range(k), repeat=d):
            if b not in combo:
                continue
            box = [members[c] for c in combo]
            if all(box) and not _is_single_dependent(arr[np.ix_(*box)]):
                return False
        return True

    def search(x: int, used: int) -> bool:
        if x == n:
            return True
        for b in range(min(used + 1, k)):
            counter.tick()
            labels[x] = b
            members[b].append(x)
            if cells_ok(b) and search(x + 1, max(used, b + 1)):
                return True
            members[b].pop()
        return False

    try:
        found = search(0, 0)
    except BudgetExhausted:
        return PartitionSearch(None, True, counter.nodes)
    part = GridPartition(k, [labels] * d) if found else None
    return PartitionSearch(part, False, counter.nodes)


@dataclass(frozen=True)
class MinPartition:
    k_min: int
    certificate: GridPartition
    exact: bool
    nodes: int = 0


def min_partition_size(
    table: FunctionTable, budget: SearchBudget | None = None, shared: bool = False
) -> MinPartition:
    """Least ``k`` admitting a valid grid partition.

    If a smaller ``k`` was left undecided by the budget, ``k_min`` is only an
    upper bound and ``exact`` is false.
    """
    budget = budget or SearchBudget()
    exact = True
    nodes = 0
    for k in range(1, max(table.domain_sizes)):
        res = find_grid_partition(table, k, budget, shared)
        nodes += res.nodes
        if res.partition is not None:
            return MinPartition(k, res.partition, exact, nodes)
        if res.exhausted:
            exact = False
    # singletons always work; search still returns the lex-least certificate
    k = max(table.domain_sizes)
    res = find_grid_partition(table, k, budget, shared)
    nodes += res.nodes
    part = res.partition if res.partition is not None else singleton_partition(table)
    return MinPartition(k, part, exact, nodes)


def greedy_partition(table: FunctionTable) -> GridPartition:
    """Merge blocks from the singleton partition while every cell stays valid.

    Merges are tried coordinate by coordinate, block pairs in index order,
    and the first legal one is applied until none is left.  Gives an upper
    bound on ``k_min`` with no optimality guarantee.
    """
    arr = table.array
    d = table.arity
    blocks = [[[x] for x in range(n)] for n in table.domain_sizes]

    def merge_ok(i: int, a: int, b: int) -> bool:
        merged = sorted(blocks[i][a] + blocks[i][b])
        others = [blocks[c] for c in range(d) if c != i]
        for combo in itertools.product(*others):
            box = list(combo)
            box.insert(i, merged)
            if not _is_single_dependent(arr[np.ix_(*box)]):
                return False
        return True

    changed = True
    while changed:
        changed = False
        for i in range(d):
            pairs = itertools.combinations(range(len(blocks[i])), 2)
            for a, b in pairs:
                if merge_ok(i, a, b):
                    blocks[i][a] = sorted(blocks[i][a] + blocks[i][b])
                    del blocks[i][b]
                    changed = True
                    break
            if changed:
                break

    assignment = []
    for i, n in enumerate(table.domain_sizes):
        labels = [0] * n
        # blocks are kept sorted by least member, so labels come out canonical
        for label, members in enumerate(sorted(blocks[i])):
            for x in members:
                labels[x] = label
        assignment.append(labels)
    k = max(len(b) for b in blocks)
    return GridPartition(k, assignment)
