"""Command line interface: ``cubedep <command> ...``.

Exit codes: 0 success, 1 input or usage error, 2 inexact result under
``--require-exact``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import CubeError, SearchBudget, load_table, save_table
from .corpus import (
    diagonal_table,
    random_patchwork,
    random_table,
    russell_table,
    triangular_table,
)
from .dependence import find_grid_partition
from .harness import analyze_table, empirical_N, explore_csv, write_report
from .ramsey import PatternInput, extract_chain
from .witness import CoordinateSplit, longest_chain, longest_chain_for_split

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INEXACT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _k_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _tuple_list(text: str) -> list[list[int]]:
    """``0,1,2`` for one-coordinate tuples, or JSON like ``[[0,1],[1,2]]``."""
    text = text.strip()
    if text.startswith("["):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise argparse.ArgumentTypeError(f"bad JSON list: {exc}") from None
        return [t if isinstance(t, list) else [t] for t in doc]
    return [[v] for v in _int_list(text)]


def _read_table(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CubeError(f"cannot read {path}: {exc.strerror}") from None
    return load_table(data)


def _emit(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubedep", description="Dependence partitions and witness chains of cube functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="k_min and L_max with certificates")
    a.add_argument("--input", required=True)
    a.add_argument("--k-budget", type=int, default=10**7)
    a.add_argument("--chain-budget", type=int, default=10**7)
    a.add_argument("--format", choices=["json", "csv", "text"], default="text")
    a.add_argument("--require-exact", action="store_true")
    a.add_argument("--timings", action="store_true")

    q = sub.add_parser("partition", help="search for a k-block grid partition")
    q.add_argument("--input", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--budget", type=int, default=10**7)
    q.add_argument("--require-exact", action="store_true")

    w = sub.add_parser("witness", help="longest witness chain")
    w.add_argument("--input", required=True)
    w.add_argument("--split", type=int, help="u-side coordinate bitmask")
    w.add_argument("--budget", type=int, default=10**7)
    w.add_argument("--require-exact", action="store_true")

    e = sub.add_parser("extract", help="extract a chain from P5/P4 pattern sequences")
    e.add_argument("--input", required=True)
    e.add_argument("--pattern", choices=["p5", "p4"], required=True)
    e.add_argument("--xs", type=_tuple_list, required=True)
    e.add_argument("--ys", type=_tuple_list, required=True)
    e.add_argument("--split", type=int, default=1, help="u-side coordinate bitmask (default 1)")
    e.add_argument("--trace", action="store_true")

    c = sub.add_parser("corpus", help="write a generated table as JSON")
    c.add_argument("family", choices=["diagonal", "russell", "triangular", "random", "patchwork"])
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--pairs", type=int, default=2)
    c.add_argument("--sizes", type=_int_list, default=[3, 3])
    c.add_argument("--codomain", type=int, default=2)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output")

    x = sub.add_parser("explore", help="empirical N(d,k) over a table space")
    x.add_argument("--sizes", type=_int_list, required=True)
    x.add_argument("--codomain", type=int, required=True)
    x.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    x.add_argument("--samples", type=int, default=1000)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--k-range", type=_k_range, required=True)
    x.add_argument("--out", required=True, help="per-table CSV")
    x.add_argument("--json", help="also write the summary as JSON")
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--k-budget", type=int, default=10**7)
    x.add_argument("--chain-budget", type=int, default=10**7)
    return p


def _cmd_analyze(args) -> int:
    table = _read_table(args.input)
    rep = analyze_table(table, SearchBudget(args.k_budget), SearchBudget(args.chain_budget))
    _emit(write_report(rep, args.format, timings=args.timings), None)
    return EXIT_INEXACT if args.require_exact and not rep.exact else EXIT_OK


def _cmd_partition(args) -> int:
    table = _read_table(args.input)
    res = find_grid_partition(table, args.k, SearchBudget(args.budget))
    if res.partition is not None:
        print(json.dumps(res.partition.to_json(), separators=(",", ":")))
        return EXIT_OK
    if res.exhausted:
        print(f"no {args.k}-block partition found before the budget ran out ({res.nodes} nodes)")
        return EXIT_INEXACT if args.require_exact else EXIT_OK
    print(f"no {args.k}-block partition exists (search exhausted after {res.nodes} nodes)")
    return EXIT_OK


def _cmd_witness(args) -> int:
    table = _read_table(args.input)
    budget = SearchBudget(args.budget)
    if args.split is not None:
        res = longest_chain_for_split(table, CoordinateSplit.from_mask(args.split, table.arity), budget)
        chain, exact = res.chain, res.exact
    else:
        res = longest_chain(table, budget)
        chain, exact = res.best, res.exact
    doc = {"length": len(chain) if chain else 1, "exact": exact, "chain": chain.to_json() if chain else None}
    print(json.dumps(doc, separators=(",", ":")))
    return EXIT_INEXACT if args.require_exact and not exact else EXIT_OK


def _cmd_extract(args) -> int:
    table = _read_table(args.input)
    split = CoordinateSplit.from_mask(args.split, table.arity)
    inp = PatternInput(table, split, args.xs, args.ys, args.pattern)
    res = extract_chain(inp)
    print(json.dumps(res.chain.to_json(), separators=(",", ":")))
    if args.trace:
        print(json.dumps(res.trace(), separators=(",", ":")))
    return EXIT_OK


def _cmd_corpus(args) -> int:
    fam = args.family
    if fam == "diagonal":
        table = diagonal_table(args.n)
    elif fam == "russell":
        table = russell_table(args.pairs)
    elif fam == "triangular":
        table = triangular_table(args.n)
    elif fam == "random":
        table = random_table(args.sizes, args.codomain, args.seed)
    else:
        table, _ = random_patchwork(args.sizes, args.k, args.codomain, args.seed)
    _emit(save_table(table) + b"\n" if not args.output else save_table(table), args.output)
    return EXIT_OK


def _cmd_explore(args) -> int:
    rep = empirical_N(
        args.sizes,
        args.codomain,
        args.k_range,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        k_budget=SearchBudget(args.k_budget),
        chain_budget=SearchBudget(args.chain_budget),
        workers=args.workers,
    )
    Path(args.out).write_bytes(explore_csv(rep))
    if args.json:
        Path(args.json).write_bytes(write_report(rep, "json"))
    sys.stdout.write(write_report(rep, "text").decode())
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "partition": _cmd_partition,
    "witness": _cmd_witness,
    "extract": _cmd_extract,
    "corpus": _cmd_corpus,
    "explore": _cmd_explore,
}


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args)
    except (CubeError, OSError) as exc:
        print(f"cubedep {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
