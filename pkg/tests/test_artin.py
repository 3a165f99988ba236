import itertools

import pytest
from hypothesis import given, strategies as st

from coxclt.artin import (
    artin_pair_identity_criterion,
    format_signed_word,
    free_reduce,
    is_identity_artin_free,
    parse_signed_word,
    unsigned,
)
from coxclt.coxeter import ConstantMatrix, is_identity_coxeter
from coxclt.partitions import PartitionError, enumerate_pair_partitions, partition_of_word

P, M = 1, -1


@pytest.mark.parametrize(
    "word, reduced",
    [
        (((1, P), (1, M)), ()),
        (((1, P), (2, P), (2, M), (1, M)), ()),
        (((1, P), (2, P), (1, M), (2, M)), ((1, P), (2, P), (1, M), (2, M))),
    ],
)
def test_free_reduce(word, reduced):
    assert free_reduce(word) == reduced
    assert is_identity_artin_free(word) == (reduced == ())


@pytest.mark.parametrize(
    "word, expected",
    [
        (((1, P), (1, M), (2, P), (2, M)), True),
        (((1, P), (1, P), (2, P), (2, M)), False),
        (((1, P), (2, P), (1, M), (2, M)), False),
    ],
)
def test_pair_criterion(word, expected):
    assert artin_pair_identity_criterion(word) is expected


def test_pair_criterion_needs_pairs():
    with pytest.raises(PartitionError, match="pair-partition words only"):
        artin_pair_identity_criterion(((1, P), (1, M), (1, P)))


def test_text_form():
    w = parse_signed_word("3,3',1")
    assert w == ((3, P), (3, M), (1, P))
    assert format_signed_word(w) == "3,3',1"


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_criterion_matches_free_reduction(k):
    for v in enumerate_pair_partitions(k):
        rep = v.representative_word()
        for signs in itertools.product((P, M), repeat=k):
            w = tuple(zip(rep, signs))
            assert artin_pair_identity_criterion(w) == is_identity_artin_free(w)


signed = st.lists(st.tuples(st.integers(1, 4), st.sampled_from([P, M])), max_size=12)


@given(signed)
def test_free_reduce_idempotent_and_inverse(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    inverse = tuple((s, -e) for s, e in reversed(w))
    assert is_identity_artin_free(tuple(w) + inverse)


@given(signed)
def test_singleton_letter_not_identity(w):
    if w and partition_of_word(unsigned(w)).has_singleton():
        assert not is_identity_artin_free(w)


@given(signed)
def test_projection_to_free_coxeter(w):
    if is_identity_artin_free(w):
        assert is_identity_coxeter(ConstantMatrix("inf"), unsigned(w), max_length=16)
