import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cubedep.core import CubeError, FunctionTable, SearchBudget
from cubedep.corpus import (
    constant_table,
    diagonal_table,
    enumerate_tables,
    random_patchwork,
    random_table,
    russell_table,
    single_coordinate_table,
    triangular_table,
)
from cubedep.dependence import min_partition_size
from cubedep.witness import (
    CoordinateSplit,
    WitnessChain,
    all_splits,
    compose,
    greedy_chain,
    longest_chain,
    longest_chain_for_split,
    split_matrix,
    verify_chain,
)

S01 = CoordinateSplit([0], [1])


def ident(n):
    return [(i,) for i in range(n)]


def test_split_validation_and_masks():
    assert [s.mask for s in all_splits(3)] == [1, 2, 3, 4, 5, 6]
    assert CoordinateSplit.from_mask(5, 3) == CoordinateSplit([0, 2], [1])
    assert S01.swapped() == CoordinateSplit([1], [0])
    for bad in [([], [0, 1]), ([0], [0, 1]), ([0], [2])]:
        with pytest.raises(CubeError):
            CoordinateSplit(*bad)
    with pytest.raises(CubeError):
        CoordinateSplit.from_mask(3, 2)


def test_compose_interleaves():
    split = CoordinateSplit([0, 2], [1, 3])
    assert compose(split, (7, 8), (1, 2)) == (7, 1, 8, 2)


def test_split_matrix_layout():
    t = random_table((2, 3, 2), 5, 0)
    split = CoordinateSplit([1], [0, 2])
    M = split_matrix(t, split)
    assert M.shape == (3, 4)
    assert M[2, 3] == t(1, 2, 1)


def test_verify_examples():
    c = constant_table((2, 2))
    assert verify_chain(c, WitnessChain(S01, [(0,)], [(1,)]))
    check = verify_chain(c, WitnessChain(S01, [(0,), (1,)], [(0,), (1,)]))
    assert not check and check.violation == (0, 0, 1)
    assert verify_chain(diagonal_table(3), WitnessChain(S01, ident(3), ident(3)))


def test_verify_arity_mismatch():
    with pytest.raises(CubeError):
        verify_chain(diagonal_table(3), WitnessChain(S01, [(0, 1)], [(0,)]))
    with pytest.raises(CubeError):
        verify_chain(random_table((2, 2, 2), 2, 0), WitnessChain(S01, [(0,)], [(0,)]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_diagonal_longest(n):
    t = diagonal_table(n)
    res = longest_chain_for_split(t, S01)
    assert (res.length, res.exact) == (n, True)
    assert verify_chain(t, res.chain)
    if n <= 3:
        assert oracles.longest_for_split(t, [0], [1]) == n


def test_constant_and_projection_longest():
    for split in all_splits(2):
        res = longest_chain_for_split(constant_table((3, 3)), split)
        assert (res.length, res.exact) == (1, True)
    assert longest_chain_for_split(single_coordinate_table((3, 3), 0), S01).length == 1


def test_longest_over_splits():
    res = longest_chain(diagonal_table(3))
    assert res.length == 3 and res.exact
    assert {m: r.length for m, r in res.per_split.items()} == {1: 3, 2: 3}
    assert res.best_mask == 1


def test_russell_longest():
    t = russell_table(3)
    assert verify_chain(t, WitnessChain(S01, [(0,), (2,), (4,)], [(1,), (3,), (5,)]))
    res = longest_chain(t)
    assert res.exact and res.length == 6
    assert verify_chain(t, res.best)


def test_arity_one_has_no_split():
    res = longest_chain(FunctionTable(1, (4,), 2, (0, 1, 0, 1)))
    assert res.no_split and res.best is None and res.length == 1


def test_budget_flag():
    res = longest_chain_for_split(random_table((5, 5), 3, 1), S01, SearchBudget(3))
    assert not res.exact
    assert verify_chain(random_table((5, 5), 3, 1), res.chain)


def test_search_matches_oracle_on_2x2_space():
    for t in enumerate_tables((2, 2), 2):
        assert longest_chain(t).length == oracles.longest(t)


@pytest.mark.parametrize("sizes, m", [((2, 2, 2), 2), ((4, 2), 3), ((2, 2, 2), 3), ((3, 2), 2)])
def test_search_matches_oracle_random(sizes, m):
    for seed in range(12):
        t = random_table(sizes, m, seed)
        res = longest_chain(t)
        assert res.exact
        assert res.length == oracles.longest(t), seed


def test_k_min_one_forces_length_one():
    for t in enumerate_tables((3, 3), 2):
        if min_partition_size(t).k_min == 1:
            assert longest_chain(t).length == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_exclusivity_bound_on_patchworks(k):
    for seed in range(20):
        t, part = random_patchwork((4, 4), k, 3, seed)
        assert longest_chain(t).length <= k**2


@settings(max_examples=60, deadline=None)
@given(
    sizes=st.sampled_from([(3, 3), (2, 4), (4, 4), (2, 2, 2), (3, 2, 2)]),
    m=st.integers(2, 4),
    seed=st.integers(0, 10**6),
)
def test_chain_structure(sizes, m, seed):
    t = random_table(sizes, m, seed)
    for r in longest_chain(t).per_split.values():
        chain = r.chain
        assert verify_chain(t, chain)
        assert len(set(chain.xs)) == len(chain) and len(set(chain.ys)) == len(chain)
        for i in range(1, len(chain) + 1):
            assert verify_chain(t, chain.prefix(i))
        assert r.length <= min(split_matrix(t, chain.split).shape)


def test_greedy_examples():
    g = greedy_chain(diagonal_table(6), S01, seed=0)
    assert 2 <= len(g) <= 6 and verify_chain(diagonal_table(6), g)
    assert len(greedy_chain(constant_table((3, 3)), S01, 0)) == 1
    t = triangular_table(8)
    g = greedy_chain(t, S01, 3)
    assert verify_chain(t, g)
    assert len(g) <= longest_chain_for_split(t, S01).length


@settings(max_examples=60, deadline=None)
@given(
    sizes=st.sampled_from([(3, 3), (4, 4), (5, 3), (2, 2, 2), (3, 2, 2)]),
    m=st.integers(1, 4),
    seed=st.integers(0, 10**6),
)
def test_greedy_always_valid_and_below_exact(sizes, m, seed):
    t = random_table(sizes, m, seed)
    for split in all_splits(t.arity):
        g = greedy_chain(t, split, seed)
        assert verify_chain(t, g)
        assert len(g) <= longest_chain_for_split(t, split).length


def test_chain_json():
    chain = WitnessChain(S01, ident(3), ident(3))
    doc = chain.to_json()
    assert doc == {"u": [0], "v": [1], "xs": [[0], [1], [2]], "ys": [[0], [1], [2]]}
    assert WitnessChain.from_json(doc) == chain
