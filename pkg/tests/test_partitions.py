import itertools

import pytest
from hypothesis import given, strategies as st

from coxclt.partitions import (
    PairPartition,
    PartitionError,
    SetPartition,
    bell,
    catalan,
    count_words_defining,
    double_factorial_odd,
    enumerate_pair_partitions,
    enumerate_set_partitions,
    inversions,
    is_noncrossing,
    partition_of_word,
    stirling2,
)


def P(*blocks):
    return PairPartition.from_blocks(blocks)


def brute_inversions(blocks):
    """Check every ordered pair of arcs against e_i < e_j < f_i < f_j."""
    blocks = sorted(blocks)
    out = set()
    for i in range(len(blocks)):
        for j in range(len(blocks)):
            (a, b), (c, d) = blocks[i], blocks[j]
            if a < c and c < b and b < d:
                out.add((i + 1, j + 1))
    return out


def bell_triangle(n):
    # Aitken's array, independent of the Stirling sum
    row = [1]
    bells = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        bells.append(row[0])
    return bells


@pytest.mark.parametrize(
    "word, blocks",
    [((5, 5, 9, 9), ((1, 2), (3, 4))), ((3, 7, 3, 7), ((1, 3), (2, 4))), ((2, 2, 2), ((1, 2, 3),))],
)
def test_partition_of_word(word, blocks):
    assert partition_of_word(word).blocks == blocks


def test_empty_word_rejected():
    with pytest.raises(PartitionError, match="empty word has no partition"):
        partition_of_word(())


def test_canonical_representation():
    a = SetPartition(4, ((4, 2), (3, 1)))
    b = SetPartition(4, ((1, 3), (2, 4)))
    assert a == b and hash(a) == hash(b)
    assert a.blocks == ((1, 3), (2, 4))


def test_invalid_blocks():
    with pytest.raises(PartitionError):
        SetPartition(4, ((1, 2), (2, 3)))
    with pytest.raises(PartitionError):
        PairPartition(3, ((1, 2, 3),))


def test_inversion_examples():
    assert inversions(P((1, 2), (3, 4))) == frozenset()
    assert inversions(P((1, 3), (2, 4))) == {(1, 2)}
    v = P((1, 4), (2, 6), (3, 5))
    expected = brute_inversions([(1, 4), (2, 6), (3, 5)])
    assert expected == {(1, 2), (1, 3)}
    assert inversions(v) == expected


def test_figure_example_crossings():
    # the six arcs drawn over twelve points in the figure: two nested arcs on
    # 1..4 and four arcs on 5..12, of which exactly the two inner pairs cross
    v = P((1, 4), (2, 3), (5, 11), (6, 9), (7, 12), (8, 10))
    assert inversions(v) == brute_inversions(v.blocks)


@pytest.mark.parametrize(
    "blocks, expected", [(((1, 2), (3, 4)), True), (((1, 3), (2, 4)), False), (((1, 4), (2, 3)), True)]
)
def test_is_noncrossing(blocks, expected):
    assert is_noncrossing(P(*blocks)) is expected


@pytest.mark.parametrize("k, count", [(2, 1), (4, 3), (6, 15), (8, 105), (10, 945)])
def test_pair_partition_counts(k, count):
    parts = list(enumerate_pair_partitions(k))
    assert len(parts) == count == double_factorial_odd(k)
    assert len(set(parts)) == count


def test_pair_partitions_k4_listed():
    assert [v.blocks for v in enumerate_pair_partitions(4)] == [
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    ]


def test_pair_partitions_in_rgs_order():
    rgs = [v.rgs() for v in enumerate_pair_partitions(8)]
    assert rgs == sorted(rgs)


def test_odd_k_rejected():
    with pytest.raises(PartitionError):
        list(enumerate_pair_partitions(5))
    with pytest.raises(PartitionError):
        list(enumerate_pair_partitions(22))


@pytest.mark.parametrize("k, p, count", [(3, 2, 3), (4, 1, 1), (4, 4, 1), (5, 3, 25), (7, 4, 350)])
def test_set_partition_counts(k, p, count):
    parts = list(enumerate_set_partitions(k, p))
    assert len(parts) == count == stirling2(k, p)
    assert all(v.n_blocks == p for v in parts)
    rgs = [v.rgs() for v in parts]
    assert rgs == sorted(rgs) and len(set(rgs)) == count


def test_set_partitions_k3p2_listed():
    assert [v.blocks for v in enumerate_set_partitions(3, 2)] == [
        ((1, 2), (3,)),
        ((1, 3), (2,)),
        ((1,), (2, 3)),
    ]


def test_set_partition_bad_p():
    with pytest.raises(PartitionError):
        list(enumerate_set_partitions(3, 0))
    with pytest.raises(PartitionError):
        list(enumerate_set_partitions(3, 4))


@pytest.mark.parametrize("k", range(1, 11))
def test_bell_numbers(k):
    total = sum(sum(1 for _ in enumerate_set_partitions(k, p)) for p in range(1, k + 1))
    assert total == bell_triangle(k)[k] == bell(k)


@pytest.mark.parametrize("k", range(2, 13, 2))
def test_noncrossing_count_is_catalan(k):
    nc = sum(1 for v in enumerate_pair_partitions(k) if is_noncrossing(v))
    assert nc == catalan(k // 2)


def test_catalan_values():
    assert catalan(0) == 1
    assert catalan(2) == 2
    assert catalan(4) == 14 == sum(1 for v in enumerate_pair_partitions(8) if is_noncrossing(v))


def test_count_words_defining():
    two = SetPartition.from_blocks([[1, 2], [3, 4]])
    assert count_words_defining(two, 10) == 90
    assert count_words_defining(SetPartition.from_blocks([[1, 2]]), 1) == 1
    assert count_words_defining(SetPartition.from_blocks([[1], [2], [3]]), 2) == 0


@pytest.mark.parametrize("k", [2, 3, 4])
def test_count_words_defining_brute_force(k):
    N = 4
    for w in itertools.product(range(1, N + 1), repeat=k):
        v = partition_of_word(w)
        realising = sum(1 for u in itertools.product(range(1, N + 1), repeat=k) if partition_of_word(u) == v)
        assert realising == count_words_defining(v, N)


words = st.lists(st.integers(1, 6), min_size=1, max_size=12)


@given(words, st.permutations(list(range(1, 7))))
def test_partition_invariant_under_relabelling(word, perm):
    relabel = {i + 1: 10 * p for i, p in enumerate(perm)}
    v = partition_of_word(word)
    assert sum(len(b) for b in v.blocks) == len(word)
    assert partition_of_word([relabel[s] for s in word]) == v


@given(st.integers(1, 7).flatmap(lambda r: st.permutations(list(range(1, 2 * r + 1)))))
def test_inversions_recomputable(perm):
    blocks = [tuple(sorted(perm[i:i + 2])) for i in range(0, len(perm), 2)]
    v = PairPartition.from_blocks(blocks)
    assert v.inversions == brute_inversions(v.blocks)
    assert PairPartition.from_blocks(v.blocks).inversions == v.inversions
    assert is_noncrossing(v) == (len(v.inversions) == 0)
