"""Dense encoding of functions on finite combinatorial cubes.

A function ``f: X_0 x ... x X_{d-1} -> Y`` with ``|X_i| = n_i`` and
``|Y| = m`` is stored as a flat row-major tuple of integers in ``range(m)``,
coordinate 0 most significant.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CubeError",
    "TableParseError",
    "BudgetExhausted",
    "FunctionTable",
    "SearchBudget",
    "NodeCounter",
    "flat_index",
    "point_of_index",
    "validate_table",
    "save_table",
    "load_table",
    "table_hash",
]

_TABLE_KEYS = ("arity", "domain_sizes", "codomain_size", "values")


class CubeError(ValueError):
    """Invalid input to a cube operation."""


class TableParseError(CubeError):
    """A serialized table could not be decoded."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class BudgetExhausted(Exception):
    """Raised inside a search when its node or time cap is hit."""


@dataclass(frozen=True)
class FunctionTable:
    arity: int
    domain_sizes: tuple[int, ...]
    codomain_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        # normalize containers so equality is field-for-field on tuples
        object.__setattr__(self, "domain_sizes", tuple(int(n) for n in self.domain_sizes))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @classmethod
    def from_array(cls, array, codomain_size: int | None = None) -> "FunctionTable":
        """Build a table from a d-dimensional integer array of values."""
        arr = np.asarray(array)
        if arr.ndim == 0:
            raise CubeError("array must have at least one dimension")
        values = tuple(int(v) for v in arr.ravel())
        if codomain_size is None:
            codomain_size = max(values) + 1 if values else 1
        return cls(arr.ndim, arr.shape, codomain_size, values)

    @classmethod
    def from_labels(cls, domain_sizes: Sequence[int], labels: Iterable) -> "FunctionTable":
        """Build a table from arbitrary hashable labels in row-major order.

        Labels are renumbered 0, 1, ... in order of first occurrence.
        """
        codes: dict = {}
        values = [codes.setdefault(lab, len(codes)) for lab in labels]
        return cls(len(domain_sizes), tuple(domain_sizes), max(len(codes), 1), tuple(values))

    @property
    def size(self) -> int:
        return math.prod(self.domain_sizes)

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only ndarray view of shape ``domain_sizes``."""
        arr = np.array(self.values, dtype=np.int64).reshape(self.domain_sizes)
        arr.setflags(write=False)
        return arr

    def __call__(self, *coords: int) -> int:
        return self.values[flat_index(self, coords)]

    def __repr__(self):
        sizes = "x".join(map(str, self.domain_sizes))
        return f"FunctionTable({sizes} -> {self.codomain_size})"


def _check_point(table: FunctionTable, p: Sequence[int]) -> None:
    if len(p) != table.arity:
        raise CubeError(f"point {tuple(p)} has {len(p)} coordinates, table arity is {table.arity}")
    for i, (x, n) in enumerate(zip(p, table.domain_sizes)):
        if not 0 <= x < n:
            raise CubeError(f"coordinate {i} of point {tuple(p)} out of range 0..{n - 1}")


def flat_index(table: FunctionTable, p: Sequence[int]) -> int:
    _check_point(table, p)
    idx = 0
    for x, n in zip(p, table.domain_sizes):
        idx = idx * n + x
    return idx


def point_of_index(table: FunctionTable, idx: int) -> tuple[int, ...]:
    if not 0 <= idx < table.size:
        raise CubeError(f"index {idx} out of range 0..{table.size - 1}")
    coords = []
    for n in reversed(table.domain_sizes):
        idx, x = divmod(idx, n)
        coords.append(x)
    return tuple(reversed(coords))


def validate_table(table: FunctionTable) -> list[str]:
    """Return one message per broken table invariant; empty means valid."""
    problems = []
    if table.arity < 1:
        problems.append(f"arity: must be >= 1, got {table.arity}")
    if len(table.domain_sizes) != table.arity:
        problems.append(
            f"domain_sizes: length {len(table.domain_sizes)} does not match arity {table.arity}"
        )
    for i, n in enumerate(table.domain_sizes):
        if n < 1:
            problems.append(f"domain_sizes[{i}]: must be >= 1, got {n}")
    if table.codomain_size < 1:
        problems.append(f"codomain_size: must be >= 1, got {table.codomain_size}")
    expected = math.prod(table.domain_sizes)
    if len(table.values) != expected:
        problems.append(f"values: length mismatch, expected {expected}, got {len(table.values)}")
    for i, v in enumerate(table.values):
        if not 0 <= v < table.codomain_size:
            problems.append(f"values[{i}]: value {v} out of range 0..{table.codomain_size - 1}")
    return problems


def save_table(table: FunctionTable) -> bytes:
    """Canonical compact JSON bytes; key order is fixed."""
    doc = {
        "arity": table.arity,
        "domain_sizes": list(table.domain_sizes),
        "codomain_size": table.codomain_size,
        "values": list(table.values),
    }
    return json.dumps(doc, separators=(",", ":")).encode()


def _int_field(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise TableParseError(key, f"expected integer, got {v!r}")
    return v


def _int_list_field(doc: dict, key: str) -> list[int]:
    v = doc[key]
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise TableParseError(key, "expected a list of integers")
    return v


def load_table(data: bytes | str) -> FunctionTable:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise TableParseError("document", f"malformed JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise TableParseError("document", "top level must be an object")
    for key in _TABLE_KEYS:
        if key not in doc:
            raise TableParseError(key, "missing field")
    unknown = sorted(set(doc) - set(_TABLE_KEYS))
    if unknown:
        raise TableParseError(unknown[0], "unknown field")
    table = FunctionTable(
        _int_field(doc, "arity"),
        tuple(_int_list_field(doc, "domain_sizes")),
        _int_field(doc, "codomain_size"),
        tuple(_int_list_field(doc, "values")),
    )
    problems = validate_table(table)
    if problems:
        field = problems[0].split(":", 1)[0].split("[", 1)[0]
        raise TableParseError(field, problems[0].split(": ", 1)[1])
    return table


def table_hash(table: FunctionTable) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(save_table(table)).hexdigest()


@dataclass(frozen=True)
class SearchBudget:
    """Cap on search effort. ``node_cap`` counts visited search nodes."""

    node_cap: int = 10**7
    time_cap: float | None = None

    def __post_init__(self):
        if self.node_cap < 1:
            raise CubeError(f"node_cap must be >= 1, got {self.node_cap}")

    def counter(self) -> "NodeCounter":
        return NodeCounter(self)


class NodeCounter:
    """Mutable per-search tally against a :class:`SearchBudget`."""

    __slots__ = ("budget", "nodes", "_deadline")

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self._deadline = None if budget.time_cap is None else time.monotonic() + budget.time_cap

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_cap:
            raise BudgetExhausted
        # clock reads are comparatively slow; sample them
        if self._deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self._deadline:
            raise BudgetExhausted
