"""Acceptance criteria, one test each, at their stated tolerances."""

import time

import oracles
from cubedep.cli import run_cli
from cubedep.core import load_table, save_table
from cubedep.corpus import (
    diagonal_table,
    enumerate_tables,
    random_pattern_input,
    random_table,
    triangular_table,
)
from cubedep.dependence import find_grid_partition, min_partition_size, verify_grid_partition
from cubedep.harness import analyze_table, exclusivity_scan
from cubedep.ramsey import P4, P5, PatternInput, color_h, extract_chain, zero_homogeneous_quadruples
from cubedep.witness import CoordinateSplit, all_splits, greedy_chain, longest_chain, verify_chain

S01 = CoordinateSplit([0], [1])

# N_emp(2, k) for k = 1, 2, 3 over all 512 tables 3x3 -> 2, from tests/oracles.py
# (naive k_min over all label assignments, naive chain enumeration)
GOLDEN_N_EMP_3x3 = {1: 4, 2: 4, 3: None}


def ident(n):
    return [(i,) for i in range(n)]


def test_c1_exclusivity_bound_3x3(criterion):
    with criterion("C1 exclusivity bound L_max <= k_min^2 on all 512 tables 3x3->2"):
        start = time.perf_counter()
        res = exclusivity_scan(enumerate_tables((3, 3), 2))
        assert res.tables == 512
        assert res.inexact == 0
        assert res.violations == ()
        assert time.perf_counter() - start < 60


def test_c2_oracle_equivalence(criterion):
    with criterion("C2 longest_chain / min_partition_size equal brute-force oracles"):
        start = time.perf_counter()
        tables = list(enumerate_tables((2, 2), 2)) + [random_table((3, 3), 2, s) for s in range(200)]
        for t in tables:
            lc = longest_chain(t)
            mp = min_partition_size(t)
            assert lc.exact and mp.exact
            assert lc.length == oracles.longest(t)
            assert mp.k_min == oracles.k_min(t)
        assert time.perf_counter() - start < 60


def test_c3_diagonal_family(criterion):
    with criterion("C3 diagonal(n): k_min = n and L_max = n, n = 2..5, exact"):
        start = time.perf_counter()
        observed = {}
        for n in range(2, 6):
            rep = analyze_table(diagonal_table(n))
            observed[n] = (rep.k_min, rep.L_max, rep.exact)
        assert time.perf_counter() - start < 120
        expected = {n: (n, n, True) for n in range(2, 6)}
        assert observed == expected, (
            f"observed (k_min, L_max, exact) = {observed}; with independent partitions per "
            "coordinate k_min(diagonal(n)) = ceil(n/2) + 1 for n >= 4 (see the decisions log)"
        )


def test_c4_extraction_validity(criterion):
    with criterion("C4 extract_chain outputs verify (triangular(10), diagonal(6), 100 random P5)"):
        start = time.perf_counter()
        tri = PatternInput(triangular_table(10), S01, ident(10), ident(10), P5)
        res = extract_chain(tri)
        assert res.length >= 9 and verify_chain(tri.table, res.chain)

        diag = PatternInput(diagonal_table(6), S01, ident(6), ident(6), P4)
        res = extract_chain(diag)
        assert res.length >= 5 and verify_chain(diag.table, res.chain)

        for seed in range(100):
            inp = random_pattern_input(P5, 8, 3, seed)
            assert verify_chain(inp.table, extract_chain(inp).chain)
        assert time.perf_counter() - start < 60


def test_c5_no_zero_homogeneous_quadruple(criterion):
    with criterion("C5 no h-0-homogeneous 4-subset on 100 P5 + 100 P4 inputs"):
        start = time.perf_counter()
        for kind in (P5, P4):
            for seed in range(100):
                inp = random_pattern_input(kind, 8, 3, seed)
                assert zero_homogeneous_quadruples(color_h(inp)) == []
        assert time.perf_counter() - start < 30


def test_c6_structural_invariants(criterion):
    with criterion("C6 10^4 searched chains distinct + prefix closed; partitions verify"):
        start = time.perf_counter()
        shapes = [((3, 3), 2), ((3, 3), 3), ((4, 3), 3), ((2, 2, 2), 2), ((3, 2, 2), 3)]
        chains = 0
        seed = 0
        while chains < 10_000:
            sizes, m = shapes[seed % len(shapes)]
            t = random_table(sizes, m, seed)
            found = [r.chain for r in longest_chain(t).per_split.values()]
            found += [greedy_chain(t, s, seed) for s in all_splits(t.arity)]
            for chain in found:
                assert len(set(chain.xs)) == len(chain)
                assert len(set(chain.ys)) == len(chain)
                for i in range(1, len(chain) + 1):
                    assert verify_chain(t, chain.prefix(i))
            chains += len(found)
            if seed % 10 == 0:
                for k in (1, 2, 3):
                    part = find_grid_partition(t, k).partition
                    if part is not None:
                        assert verify_grid_partition(t, part)
            seed += 1
        assert time.perf_counter() - start < 30


def test_c7_explore_reproducible(criterion, tmp_path):
    with criterion("C7 explore 3x3->2 CSV byte-identical across runs/workers; N_emp golden"):
        start = time.perf_counter()
        outputs = []
        for i, workers in enumerate([1, 1, 2]):
            csv_path = tmp_path / f"r{i}.csv"
            json_path = tmp_path / f"r{i}.json"
            argv = [
                "explore", "--sizes", "3,3", "--codomain", "2", "--mode", "exhaustive",
                "--k-range", "1..3", "--out", str(csv_path), "--json", str(json_path),
                "--workers", str(workers),
            ]
            assert run_cli(argv) == 0
            outputs.append((csv_path.read_bytes(), json_path.read_bytes()))
        assert outputs[0] == outputs[1] == outputs[2]

        import json

        buckets = json.loads(outputs[0][1])["buckets"]
        assert {b["k"]: b["n_emp"] for b in buckets} == GOLDEN_N_EMP_3x3
        assert time.perf_counter() - start < 120


def test_c8_serialization_round_trip(criterion):
    with criterion("C8 10^3 random tables round-trip bit-exactly"):
        shapes = [(3, 3), (2, 5), (2, 2, 3), (4,), (2, 2, 2, 2)]
        for seed in range(1000):
            t = random_table(shapes[seed % len(shapes)], 1 + seed % 6, seed)
            data = save_table(t)
            back = load_table(data)
            assert back == t
            assert save_table(back) == data
