import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxclt.coxeter import INF, ConstantMatrix, TableMatrix
from coxclt.partitions import PairPartition, enumerate_pair_partitions, falling_factorial
from coxclt.random_model import (
    ALL_THREE,
    RandomModelConfig,
    SampledMatrix,
    Support,
    WorkCapError,
    convergence_experiment,
    pair_hash,
    pair_hash_np,
    sample_matrix,
    variance_bound,
    x_n_expectation,
    x_n_monte_carlo,
    x_n_statistic,
)

CROSS = PairPartition.from_blocks([(1, 3), (2, 4)])
NESTED = PairPartition.from_blocks([(1, 4), (2, 3)])
THREE_ARCS = PairPartition.from_blocks([(1, 4), (2, 6), (3, 5)])


def test_hash_scalar_matches_vector():
    a = np.array([1, 2, 3, 17, 10**6], dtype=np.uint64)
    b = np.array([2, 9, 4, 18, 10**6 + 5], dtype=np.uint64)
    vec = pair_hash_np(42, 7, a, b)
    assert [int(x) for x in vec] == [pair_hash(42, 7, int(x), int(y)) for x, y in zip(a, b)]


@pytest.mark.parametrize("support", ["three", "inf", "mixed:3=1,4=2,inf=1"])
def test_block_matches_accessor(support):
    m = sample_matrix(RandomModelConfig(p=Fraction(1, 3), seed=5, support=support))
    blk = m.block(12)
    for s in range(1, 13):
        for t in range(1, 13):
            v = m(s, t)
            assert blk[s - 1, t - 1] == (0 if v == INF else v)


def test_diagonal_and_symmetry():
    m = sample_matrix(RandomModelConfig(p=Fraction(1, 2), seed=11))
    for s in range(1, 30):
        assert m(s, s) == 1
        for t in range(1, 30):
            assert m(s, t) == m(t, s)


def test_degenerate_laws():
    always = sample_matrix(RandomModelConfig(p=1, seed=3))
    never = sample_matrix(RandomModelConfig(p=0, seed=3, support="three"))
    pairs = [(s, t) for s in range(1, 40) for t in range(s + 1, 40)]
    assert all(always(s, t) == 2 for s, t in pairs)
    assert all(never(s, t) == 3 for s, t in pairs)


def test_query_order_irrelevant():
    cfg = RandomModelConfig(p=Fraction(1, 2), seed=99, support="mixed:3=1,inf=1")
    pairs = [(s, t) for s in range(1, 25) for t in range(1, 25)]
    first = {pq: sample_matrix(cfg)(*pq) for pq in pairs}
    m = sample_matrix(cfg)
    second = {pq: m(*pq) for pq in reversed(pairs)}
    assert first == second


def test_empirical_law():
    p = Fraction(3, 10)
    m = sample_matrix(RandomModelConfig(p=p, seed=2024))
    blk = m.commute_block(142)  # 10011 unordered pairs
    iu = np.triu_indices(142, 1)
    frac = blk[iu].mean()
    se = math.sqrt(float(p * (1 - p)) / len(iu[0]))
    assert abs(frac - float(p)) <= 4 * se


def test_mixed_support_frequencies():
    m = SampledMatrix(Fraction(0), 8, Support.parse("mixed:3=1,inf=3"))
    blk = m.block(120)
    iu = np.triu_indices(120, 1)
    share_inf = (blk[iu] == 0).mean()
    assert abs(share_inf - 0.75) < 0.03


def test_config_roundtrip_and_validation():
    cfg = RandomModelConfig.from_dict({"p": "1/2", "seed": 42, "support": "three", "N_schedule": [10, 20], "k_list": [4]})
    assert cfg.p == Fraction(1, 2) and cfg.support == ALL_THREE
    assert RandomModelConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ValueError):
        RandomModelConfig(p=Fraction(3, 2))
    with pytest.raises(ValueError):
        RandomModelConfig(N_schedule=(10, 10))
    with pytest.raises(ValueError):
        RandomModelConfig(k_list=(3,))


def test_x_n_noncrossing_is_falling_factorial():
    m = sample_matrix(RandomModelConfig(p=Fraction(1, 5), seed=1))
    for N in (1, 2, 5, 9):
        assert x_n_statistic(NESTED, N, m) == Fraction(falling_factorial(N, 2), N**2)


def test_x_n_all_commuting():
    m = sample_matrix(RandomModelConfig(p=1, seed=1))
    for v in enumerate_pair_partitions(6):
        assert x_n_statistic(v, 7, m) == Fraction(falling_factorial(7, 3), 7**3)


def test_x_n_small_crossing_example():
    m = TableMatrix(3, {(1, 2): 2})
    # two injective labellings, both the identity; repeated-letter words define another partition
    assert x_n_statistic(CROSS, 2, m) == Fraction(1, 2)
    assert x_n_statistic(CROSS, 2, m, method="enumerate") == Fraction(1, 2)


def test_x_n_labels_equal_enumeration():
    for seed in range(10):
        cfg = RandomModelConfig(p=Fraction(1, 2), seed=seed, support="mixed:3=1,4=1,inf=1")
        m = sample_matrix(cfg)
        for v in enumerate_pair_partitions(6):
            for N in (3, 5):
                assert x_n_statistic(v, N, m) == x_n_statistic(v, N, m, method="enumerate")


def test_work_cap():
    m = ConstantMatrix(3)
    with pytest.raises(WorkCapError, match="Monte Carlo"):
        x_n_statistic(CROSS, 1000, m, work_cap=10**5)


def test_monte_carlo_estimate():
    m = sample_matrix(RandomModelConfig(p=Fraction(1, 2), seed=4))
    exact = float(x_n_statistic(CROSS, 200, m))
    est = x_n_monte_carlo(CROSS, 200, m, samples=4000, seed=1)
    assert abs(est - exact) < 0.05


def test_expectation_examples():
    assert x_n_expectation(NESTED, 2, Fraction(1, 3)) == Fraction(1, 2)
    assert x_n_expectation(CROSS, 50, 0) == 0
    assert x_n_expectation(CROSS, 10**9, Fraction(1, 2)) - Fraction(1, 2) < Fraction(1, 10**8)
    assert x_n_expectation(THREE_ARCS, 4, Fraction(1, 2)) == Fraction(24, 64) * Fraction(1, 4)


def test_variance_bound_examples():
    assert variance_bound(CROSS, 10) == Fraction(1, 100)
    assert variance_bound(NESTED, 10) == 0
    # this partition has two crossings, (1,2) and (1,3)
    assert variance_bound(THREE_ARCS, 5) == Fraction(2, 25)


def test_expectation_is_exact_mean():
    # average X_N over all assignments of a small table equals the closed form
    N, p = 4, Fraction(1, 2)
    v = THREE_ARCS
    pairs = [(s, t) for s in range(1, N + 1) for t in range(s + 1, N + 1)]
    total = Fraction(0)
    for bits in range(2 ** len(pairs)):
        entries = {pq: (2 if bits >> i & 1 else 3) for i, pq in enumerate(pairs)}
        total += x_n_statistic(v, N, TableMatrix(3, entries))
    assert total / 2 ** len(pairs) == x_n_expectation(v, N, p)


@given(st.integers(1, 5), st.integers(1, 400), st.fractions(0, 1, max_denominator=20))
def test_expectation_gap_bound(r, N, p):
    if N < 2 * r:
        return
    v = PairPartition.from_blocks([(2 * i + 1, 2 * i + 2) for i in range(r)])
    gap = abs(x_n_expectation(v, N, p) - 1)
    assert gap <= Fraction(r * r, N)
    # crossing partition with the same r
    w = PairPartition.from_blocks([(i + 1, i + r + 1) for i in range(r)])
    limit = p ** w.crossing_number
    assert abs(x_n_expectation(w, N, p) - limit) <= Fraction(r * r, N)


def test_convergence_experiment_degenerate():
    cfg = RandomModelConfig(p=1, seed=0, N_schedule=(5, 10, 20))
    rows = convergence_experiment(cfg, CROSS).rows
    assert [r.value for r in rows] == [Fraction(falling_factorial(N, 2), N * N) for N in (5, 10, 20)]
    cfg0 = RandomModelConfig(p=0, seed=0, support="three", N_schedule=(5, 10, 20))
    assert all(r.value == 0 for r in convergence_experiment(cfg0, CROSS).rows)


def test_convergence_uses_one_matrix():
    cfg = RandomModelConfig(p=Fraction(1, 2), seed=17, N_schedule=(6, 12))
    m = sample_matrix(cfg)
    rows = convergence_experiment(cfg, CROSS).rows
    assert rows[0].value == x_n_statistic(CROSS, 6, m)
    assert rows[1].value == x_n_statistic(CROSS, 12, m)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**64 - 1), st.fractions(0, 1, max_denominator=16))
def test_determinism(seed, p):
    cfg = RandomModelConfig(p=p, seed=seed)
    assert (sample_matrix(cfg).block(15) == sample_matrix(cfg).block(15)).all()
