"""Exact moments of generator sums in Coxeter and Artin groups."""

from .artin import artin_pair_identity_criterion, free_reduce, is_identity_artin_free, parse_signed_word
from .coxeter import (
    INF,
    ConstantMatrix,
    CoxeterMatrix,
    TableMatrix,
    is_identity_coxeter,
    pair_partition_identity_criterion,
    reduce_word,
    validate_matrix,
)
from .moments import (
    convergence_table,
    exact_moment_artin_free,
    exact_moment_coxeter,
    limit_moment_semicircle,
    limit_polynomial_q,
    q_moment_fast,
)
from .partitions import (
    PairPartition,
    SetPartition,
    catalan,
    count_words_defining,
    enumerate_pair_partitions,
    enumerate_set_partitions,
    inversions,
    is_noncrossing,
    partition_of_word,
)
from .random_model import (
    RandomModelConfig,
    convergence_experiment,
    sample_matrix,
    variance_bound,
    x_n_expectation,
    x_n_statistic,
)

__version__ = "0.1.0"
