"""End-to-end analysis of tables and scans over whole table spaces.

A table's profile is the pair ``(k_min, L_max)``: the fewest blocks of a
valid grid partition and the longest witness chain.  A verified ``k``-block
partition caps every chain at ``k ** d`` (two chain indices landing in the
same pair of cells contradict single-coordinate dependence there), so
:func:`exclusivity_scan` doubles as a consistency check of both searches.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import CubeError, FunctionTable, SearchBudget, table_hash
from .corpus import DEFAULT_ENUMERATION_CAP, enumerate_tables, random_table
from .dependence import GridPartition, min_partition_size, verify_grid_partition
from .witness import CoordinateSplit, WitnessChain, longest_chain, verify_chain

__all__ = [
    "EXPLORE_COLUMNS",
    "AnalysisReport",
    "Violation",
    "ScanResult",
    "TableRow",
    "KBucket",
    "EmpiricalNReport",
    "analyze_table",
    "space_tables",
    "exclusivity_scan",
    "empirical_N",
    "write_report",
    "explore_csv",
]

EXPLORE_COLUMNS = ("table_hash", "k_min", "k_exact", "L_max", "L_exact", "best_split")


def _split_label(split: CoordinateSplit | None) -> str:
    if split is None:
        return "none"
    return "-".join(map(str, split.u)) + "|" + "-".join(map(str, split.v))


def _flag(b: bool) -> str:
    return "true" if b else "false"


@dataclass(frozen=True)
class AnalysisReport:
    table_hash: str
    domain_sizes: tuple[int, ...]
    codomain_size: int
    k_min: int
    k_exact: bool
    partition: GridPartition
    L_max: int
    L_exact: bool
    chain: WitnessChain | None
    per_split: dict[int, tuple[int, bool]] = field(compare=False)
    k_budget: SearchBudget = field(compare=False)
    chain_budget: SearchBudget = field(compare=False)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def exact(self) -> bool:
        return self.k_exact and self.L_exact

    @property
    def best_split(self) -> str:
        return _split_label(self.chain.split if self.chain else None)

    def to_json(self, timings: bool = False) -> dict:
        doc = {
            "table_hash": self.table_hash,
            "domain_sizes": list(self.domain_sizes),
            "codomain_size": self.codomain_size,
            "k_min": self.k_min,
            "k_exact": self.k_exact,
            "partition": self.partition.to_json(),
            "L_max": self.L_max,
            "L_exact": self.L_exact,
            "chain": self.chain.to_json() if self.chain else None,
            "per_split": [
                {"mask": mask, "length": length, "exact": exact}
                for mask, (length, exact) in sorted(self.per_split.items())
            ],
            "budgets": {"k_nodes": self.k_budget.node_cap, "chain_nodes": self.chain_budget.node_cap},
        }
        if timings:
            doc["wall_time"] = round(self.wall_time, 6)
        return doc


def analyze_table(
    table: FunctionTable,
    k_budget: SearchBudget | None = None,
    chain_budget: SearchBudget | None = None,
) -> AnalysisReport:
    """Compute ``(k_min, L_max)`` with certificates, both re-verified."""
    k_budget = k_budget or SearchBudget()
    chain_budget = chain_budget or SearchBudget()
    start = time.perf_counter()
    mp = min_partition_size(table, k_budget)
    lc = longest_chain(table, chain_budget)
    elapsed = time.perf_counter() - start

    if not verify_grid_partition(table, mp.certificate):
        raise AssertionError("partition certificate failed re-verification")
    if lc.best is not None and not verify_chain(table, lc.best):
        raise AssertionError("chain certificate failed re-verification")
    per_split = {mask: (r.length, r.exact) for mask, r in lc.per_split.items()}
    return AnalysisReport(
        table_hash(table),
        table.domain_sizes,
        table.codomain_size,
        mp.k_min,
        mp.exact,
        mp.certificate,
        lc.length,
        lc.exact,
        lc.best,
        per_split,
        k_budget,
        chain_budget,
        elapsed,
    )


def space_tables(
    sizes: Sequence[int],
    codomain_size: int,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Iterable[FunctionTable]:
    """Tables of a space, exhaustively or by seeded sampling.

    Sample ``i`` is ``random_table(sizes, m, (seed, i))``.
    """
    if mode == "exhaustive":
        return enumerate_tables(sizes, codomain_size, cap=cap)
    if mode in ("random", "sampled"):
        return (random_table(sizes, codomain_size, (seed, i)) for i in range(samples))
    raise CubeError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class Violation:
    table_hash: str
    k: int
    partition: GridPartition
    chain: WitnessChain


@dataclass(frozen=True)
class ScanResult:
    tables: int
    violations: tuple[Violation, ...]
    inexact: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return f"scanned {self.tables} tables: no chain exceeds k^d ({self.inexact} inexact)"
        return (
            f"scanned {self.tables} tables: {len(self.violations)} violations of L <= k^d; "
            "the bound is a theorem, so these indicate a bug in a search or verifier"
        )


def exclusivity_scan(
    tables: Iterable[FunctionTable],
    k_budget: SearchBudget | None = None,
    chain_budget: SearchBudget | None = None,
) -> ScanResult:
    count = inexact = 0
    violations = []
    for table in tables:
        count += 1
        rep = analyze_table(table, k_budget, chain_budget)
        inexact += not rep.exact
        if rep.chain is not None and rep.L_max > rep.k_min ** table.arity:
            violations.append(Violation(rep.table_hash, rep.k_min, rep.partition, rep.chain))
    return ScanResult(count, tuple(violations), inexact)


@dataclass(frozen=True)
class TableRow:
    table_hash: str
    k_min: int
    k_exact: bool
    L_max: int
    L_exact: bool
    best_split: str

    def csv_fields(self) -> list[str]:
        return [
            self.table_hash,
            str(self.k_min),
            _flag(self.k_exact),
            str(self.L_max),
            _flag(self.L_exact),
            self.best_split,
        ]


@dataclass(frozen=True)
class KBucket:
    k: int
    above: int  # exact tables with k_min > k
    max_L: int | None
    witness: str | None  # hash of the first table attaining max_L
    inexact_excluded: int

    @property
    def n_emp(self) -> int | None:
        """Empirical lower bound on N(d, k); None if every table is k-partitionable."""
        return None if self.max_L is None else self.max_L + 1

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n_emp": self.n_emp,
            "max_L": self.max_L,
            "witness": self.witness,
            "tables_above_k": self.above,
            "inexact_excluded": self.inexact_excluded,
            "all_k_partitionable": self.max_L is None,
        }


@dataclass(frozen=True)
class EmpiricalNReport:
    d: int
    sizes: tuple[int, ...]
    codomain_size: int
    mode: str
    samples: int | None
    seed: int | None
    rows: tuple[TableRow, ...]
    buckets: tuple[KBucket, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "sizes": list(self.sizes),
            "codomain_size": self.codomain_size,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "tables": len(self.rows),
            "buckets": [b.to_json() for b in self.buckets],
        }


def _row(args) -> TableRow:
    table, k_budget, chain_budget = args
    rep = analyze_table(table, k_budget, chain_budget)
    return TableRow(rep.table_hash, rep.k_min, rep.k_exact, rep.L_max, rep.L_exact, rep.best_split)


def empirical_N(
    sizes: Sequence[int],
    codomain_size: int,
    k_range: Iterable[int],
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    k_budget: SearchBudget | None = None,
    chain_budget: SearchBudget | None = None,
    workers: int = 1,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> EmpiricalNReport:
    """For each ``k``: ``1 + max L_max`` over tables with ``k_min > k``.

    Tables whose ``k_min`` or ``L_max`` is not exact are left out of the
    maxima and counted per bucket instead.  Rows come back in table order
    whatever the worker count.
    """
    sizes = tuple(sizes)
    k_budget = k_budget or SearchBudget()
    chain_budget = chain_budget or SearchBudget()
    tables = space_tables(sizes, codomain_size, mode, samples, seed, cap)
    jobs = ((t, k_budget, chain_budget) for t in tables)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(_row, jobs, chunksize=32))
    else:
        rows = tuple(map(_row, jobs))

    buckets = []
    for k in sorted(set(k_range)):
        if k < 1:
            raise CubeError(f"k must be >= 1, got {k}")
        above = 0
        inexact = 0
        max_L = None
        witness = None
        for r in rows:
            if not (r.k_exact and r.L_exact):
                inexact += 1
                continue
            if r.k_min > k:
                above += 1
                if max_L is None or r.L_max > max_L:
                    max_L, witness = r.L_max, r.table_hash
        buckets.append(KBucket(k, above, max_L, witness, inexact))
    exhaustive = mode == "exhaustive"
    return EmpiricalNReport(
        len(sizes),
        sizes,
        codomain_size,
        mode,
        None if exhaustive else samples,
        None if exhaustive else seed,
        rows,
        tuple(buckets),
    )


def explore_csv(report: EmpiricalNReport) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXPLORE_COLUMNS)
    for r in report.rows:
        w.writerow(r.csv_fields())
    return buf.getvalue().encode()


def _analysis_text(rep: AnalysisReport) -> str:
    exact = lambda b: "exact" if b else "upper bound"  # noqa: E731
    lines = [
        f"table {rep.table_hash}",
        f"sizes={'x'.join(map(str, rep.domain_sizes))} codomain={rep.codomain_size}",
        f"k_min={rep.k_min} ({exact(rep.k_exact)})",
        f"partition={json.dumps(rep.partition.to_json()['assignment'])}",
        f"L_max={rep.L_max} ({'exact' if rep.L_exact else 'lower bound'})",
        f"best_split={rep.best_split}",
    ]
    for mask, (length, ex) in sorted(rep.per_split.items()):
        lines.append(f"  split mask={mask}: L={length}{'' if ex else ' (lower bound)'}")
    if rep.chain is not None:
        lines.append(f"chain={json.dumps(rep.chain.to_json(), separators=(',', ':'))}")
    return "\n".join(lines) + "\n"


def _empirical_text(rep: EmpiricalNReport) -> str:
    mode = rep.mode if rep.mode == "exhaustive" else f"{rep.mode}(samples={rep.samples}, seed={rep.seed})"
    lines = [
        f"d={rep.d} sizes={'x'.join(map(str, rep.sizes))} codomain={rep.codomain_size} "
        f"mode={mode} tables={len(rep.rows)}"
    ]
    for b in rep.buckets:
        if b.max_L is None:
            lines.append(f"k={b.k}: all tables k-partitionable")
        else:
            lines.append(
                f"k={b.k}: N_emp={b.n_emp} (max L_max={b.max_L} over {b.above} tables "
                f"with k_min>{b.k}; witness {b.witness})"
            )
        if b.inexact_excluded:
            lines.append(f"  {b.inexact_excluded} inexact tables excluded")
    return "\n".join(lines) + "\n"


def write_report(report, fmt: str = "json", timings: bool = False) -> bytes:
    """Serialize an analysis or empirical-N report as json, csv or text.

    Timings are left out unless asked for, so equal inputs give equal bytes.
    """
    if fmt not in ("json", "csv", "text"):
        raise CubeError(f"unknown format {fmt!r}")
    if isinstance(report, AnalysisReport):
        if fmt == "json":
            return (json.dumps(report.to_json(timings), indent=2) + "\n").encode()
        if fmt == "csv":
            row = TableRow(
                report.table_hash, report.k_min, report.k_exact,
                report.L_max, report.L_exact, report.best_split,
            )
            return (",".join(EXPLORE_COLUMNS) + "\n" + ",".join(row.csv_fields()) + "\n").encode()
        return _analysis_text(report).encode()
    if isinstance(report, EmpiricalNReport):
        if fmt == "json":
            return (json.dumps(report.to_json(), indent=2) + "\n").encode()
        if fmt == "csv":
            return explore_csv(report)
        return _empirical_text(report).encode()
    raise CubeError(f"cannot serialize {type(report).__name__}")
