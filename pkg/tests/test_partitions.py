from collections import Counter
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from simcore.partitions import (
    CorePair,
    NotCoprimeError,
    Partition,
    anderson_count,
    beta_size,
    conjugate,
    enumerate_st_cores,
    first_column_hooks,
    hook_lengths,
    hook_set,
    is_s_core,
    is_st_core,
    max_core_size,
    naive_st_cores,
    partition_from_beta,
    semigroup_gaps,
    size_multiset,
)
from simcore.pathdp import coprime_pairs

partitions = st.lists(st.integers(1, 9), max_size=8).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True))))

EXAMPLE = Partition((5, 4, 2, 1, 1))


def brute_hooks(p):
    """Count arm and leg cells directly on the Young diagram."""
    cells = {(i, j) for i, row in enumerate(p.parts) for j in range(row)}
    out = []
    for i, row in enumerate(p.parts):
        out.append([
            1 + sum((i, jj) in cells for jj in range(j + 1, row))
            + sum((ii, j) in cells for ii in range(i + 1, len(p.parts)))
            for j in range(row)
        ])
    return out


def test_conjugate_example():
    assert conjugate(EXAMPLE) == Partition((5, 3, 2, 2, 1))
    assert conjugate(Partition(())) == Partition(())
    assert conjugate(Partition((3,))) == Partition((1, 1, 1))


@given(partitions)
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).size == p.size


def test_hook_table_example():
    # Direct count on the diagram; row 2 is [7,4,2,1] (cell (2,3): arm 1, leg 0).
    assert hook_lengths(EXAMPLE) == [[9, 6, 4, 3, 1], [7, 4, 2, 1], [4, 1], [2], [1]]
    assert hook_set(EXAMPLE) == {1, 2, 3, 4, 6, 7, 9}
    assert hook_lengths(Partition(())) == []


@given(partitions)
def test_hook_formula_matches_direct_count(p):
    assert hook_lengths(p) == brute_hooks(p)


def test_core_predicates_example():
    assert is_s_core(EXAMPLE, 5)
    assert not is_s_core(EXAMPLE, 4)
    assert is_s_core(EXAMPLE, 10)
    assert is_st_core(EXAMPLE, (5, 8))
    assert not is_st_core(EXAMPLE, (4, 5))


def test_partition_validation_and_text():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert str(Partition(())) == "empty"
    assert str(Partition((2, 1, 1))) == "211"
    assert str(Partition((12, 1))) == "12,1"
    assert Partition.parse("211") == Partition((2, 1, 1))
    assert Partition.parse("12,1") == Partition((12, 1))


@pytest.mark.parametrize("s,t", [(2, 4), (3, 3), (0, 5), (6, 9), (-1, 2)])
def test_corepair_rejects(s, t):
    with pytest.raises(NotCoprimeError):
        CorePair(s, t)


@given(partitions)
def test_beta_roundtrip(p):
    b = first_column_hooks(p)
    assert partition_from_beta(b) == p
    assert beta_size(b) == p.size


def test_semigroup_gaps():
    assert semigroup_gaps(3, 5) == [1, 2, 4, 7]
    assert max(semigroup_gaps(7, 11)) == 7 * 11 - 7 - 11
    assert len(semigroup_gaps(7, 11)) == (7 - 1) * (11 - 1) // 2


def test_three_five_cores():
    cores = enumerate_st_cores((3, 5))
    assert [p.size for p in cores] == [0, 1, 2, 2, 4, 4, 8]
    assert {str(p) for p in cores} == {"empty", "1", "2", "11", "31", "211", "4211"}


@pytest.mark.parametrize("pair", coprime_pairs(10), ids=str)
def test_enumeration_count_and_max_size(pair):
    cores = enumerate_st_cores(pair)
    s, t = pair
    assert len(cores) == factorial(s + t - 1) // (factorial(s) * factorial(t))
    assert len(cores) == comb(s + t, s) // (s + t)
    assert len(set(cores)) == len(cores)
    assert all(is_st_core(p, pair) for p in cores)
    assert max(p.size for p in cores) == (s * s - 1) * (t * t - 1) // 24 == max_core_size(pair)
    assert anderson_count(pair) == len(cores)


@pytest.mark.parametrize("pair", [p for p in coprime_pairs(8) if p.s + p.t <= 12], ids=str)
def test_enumeration_is_exhaustive(pair):
    """Independent search over all partitions up to the maximum size."""
    found = naive_st_cores(pair, max_core_size(pair))
    assert Counter(p.size for p in found) == size_multiset(pair)
    assert set(found) == set(enumerate_st_cores(pair))


def test_naive_search_small_scan():
    # every partition of size <= 8 checked by the hook predicate
    def all_partitions(n, m=None):
        m = n if m is None else m
        if n == 0:
            yield ()
            return
        for k in range(min(n, m), 0, -1):
            for rest in all_partitions(n - k, k):
                yield (k,) + rest

    scan = [Partition(p) for n in range(9) for p in all_partitions(n) if is_st_core(Partition(p), (3, 5))]
    assert sorted(scan) == sorted(naive_st_cores((3, 5), 8))
