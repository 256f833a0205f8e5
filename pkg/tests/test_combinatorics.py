import itertools

import pytest

from chromkit.combinatorics import (
    SetComposition,
    SetPartition,
    bell_number,
    coarsening_leq,
    compositions_of_int,
    enumerate_set_compositions,
    enumerate_set_partitions,
    minima_block,
    ordered_bell_number,
    partitions_of_int,
)
from chromkit.errors import DomainError, SizeCapError, ValidationError


def brute_force_set_partitions(n):
    """Independent oracle: all block assignments, canonicalized."""
    if n == 0:
        return {()}
    out = set()
    for assign in itertools.product(range(n), repeat=n):
        blocks = {}
        for v, b in enumerate(assign, start=1):
            blocks.setdefault(b, []).append(v)
        out.add(tuple(sorted(tuple(sorted(b)) for b in blocks.values())))
    return out


def test_partition_counts_small():
    assert sum(1 for _ in enumerate_set_partitions(0)) == 1
    assert sum(1 for _ in enumerate_set_partitions(3)) == 5
    # value frozen from the brute-force oracle below
    assert sum(1 for _ in enumerate_set_partitions(4)) == 15


def test_partitions_match_brute_force():
    for n in range(6):
        enumerated = {p.blocks for p in enumerate_set_partitions(n)}
        assert enumerated == brute_force_set_partitions(n)


def test_partition_enumeration_no_duplicates():
    for n in range(7):
        seen = list(enumerate_set_partitions(n))
        assert len(seen) == len(set(seen)) == bell_number(n)


def test_composition_counts_match_ordered_bell():
    expected = [1, 1, 3, 13, 75, 541, 4683]
    for n, want in enumerate(expected):
        assert sum(1 for _ in enumerate_set_compositions(n)) == want
        assert ordered_bell_number(n) == want


def test_composition_enumeration_no_duplicates():
    for n in range(6):
        seen = list(enumerate_set_compositions(n))
        assert len(seen) == len(set(seen))


def test_enumeration_caps():
    with pytest.raises(SizeCapError):
        list(enumerate_set_partitions(13))
    with pytest.raises(SizeCapError):
        list(enumerate_set_compositions(11))
    with pytest.raises(SizeCapError):
        list(enumerate_set_partitions(-1))


def test_partition_validation():
    with pytest.raises(ValidationError):
        SetPartition(3, [(1, 2)])
    with pytest.raises(ValidationError):
        SetPartition(2, [(1,), (1, 2)])
    with pytest.raises(ValidationError):
        SetPartition(2, [(1,), (), (2,)])


def test_coarsening_examples():
    singletons = SetPartition(3, [(1,), (2,), (3,)])
    merged = SetPartition(3, [(1, 2), (3,)])
    other = SetPartition(3, [(1, 3), (2,)])
    assert coarsening_leq(singletons, merged)
    assert not coarsening_leq(merged, other)
    assert coarsening_leq(merged, merged)
    with pytest.raises(DomainError):
        coarsening_leq(singletons, SetPartition(2, [(1,), (2,)]))


def test_coarsening_matches_block_containment():
    parts = list(enumerate_set_partitions(4))
    for a in parts:
        for b in parts:
            expected = all(
                any(set(x) <= set(y) for y in b.blocks) for x in a.blocks
            )
            assert coarsening_leq(a, b) == expected


def minima_oracle(J, pc):
    for blk in pc.blocks:
        hit = set(J) & set(blk)
        if hit:
            return frozenset(hit)
    raise AssertionError


def test_minima_block_examples():
    pc = SetComposition(3, [(2,), (1, 3)])
    assert minima_block({1, 2, 3}, pc) == {2}
    assert minima_block({1, 3}, pc) == {1, 3}
    # derived by walking the blocks in order: {2,3,4} first meets {1,3}
    pc2 = SetComposition(5, [(1, 3), (2,), (4, 5)])
    assert minima_block({2, 3, 4}, pc2) == minima_oracle({2, 3, 4}, pc2) == {3}
    with pytest.raises(DomainError):
        minima_block(set(), pc)
    with pytest.raises(DomainError):
        minima_block({7}, pc)


def test_minima_block_matches_oracle_exhaustively():
    for pc in enumerate_set_compositions(4):
        for r in range(1, 5):
            for J in itertools.combinations(range(1, 5), r):
                assert minima_block(J, pc) == minima_oracle(J, pc)


def test_composition_type_and_shape():
    pc = SetComposition(4, [(2, 4), (1,), (3,)])
    assert pc.composition_type() == (2, 1, 1)
    assert pc.underlying_partition().shape() == (2, 1, 1)
    assert pc.underlying_partition() == SetPartition(4, [(1,), (2, 4), (3,)])


def test_integer_partition_helpers():
    assert list(partitions_of_int(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert sum(1 for _ in compositions_of_int(5)) == 16
    assert list(partitions_of_int(0)) == [()]


def test_json_round_trip():
    pc = SetComposition(4, [(2, 4), (1,), (3,)])
    assert SetComposition.from_json_obj(pc.to_json_obj()) == pc
    pi = SetPartition(4, [(2, 4), (1,), (3,)])
    assert SetPartition.from_json_obj(pi.to_json_obj()) == pi
