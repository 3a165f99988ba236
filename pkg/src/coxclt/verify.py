"""Exhaustive cross-checks of the partition-level identity criteria against the solvers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .artin import artin_pair_identity_criterion, is_identity_artin_free
from .coxeter import (
    INF,
    ConstantMatrix,
    CoxeterMatrix,
    TableMatrix,
    identity_mask_geometric,
    is_identity_coxeter,
    pair_partition_identity_criterion,
)
from .moments import (
    brute_force_moment_artin_free,
    brute_force_moment_coxeter,
    exact_moment_artin_free,
    exact_moment_coxeter,
)
from .partitions import enumerate_pair_partitions, partition_of_word

SUITES = ("lemma2", "lemma3", "lemma-p2", "artin45", "oracle")


@dataclass
class VerifyResult:
    suite: str
    checked: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe()

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


def random_tables(count: int, n_letters: int = 4, values=(2, 3, INF), seed: int = 0) -> list[TableMatrix]:
    """Seeded matrices on letters 1..n_letters with entries drawn uniformly from ``values``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        entries = {
            (s, t): values[int(rng.integers(len(values)))]
            for s in range(1, n_letters + 1)
            for t in range(s + 1, n_letters + 1)
        }
        out.append(TableMatrix(INF, entries))
    return out


def pair_partition_words(max_length: int, n_letters: int) -> Iterator[tuple[int, ...]]:
    """Every word of length <= max_length on letters 1..n_letters defining a pair partition."""
    for k in range(2, max_length + 1, 2):
        r = k // 2
        if r > n_letters:
            break
        for v in enumerate_pair_partitions(k):
            for labels in itertools.permutations(range(1, n_letters + 1), r):
                word = [0] * k
                for (e, f), t in zip(v.blocks, labels):
                    word[e - 1] = word[f - 1] = t
                yield tuple(word)


def singleton_words(max_length: int, n_letters: int) -> Iterator[tuple[int, ...]]:
    for k in range(1, max_length + 1):
        for w in itertools.product(range(1, n_letters + 1), repeat=k):
            if partition_of_word(w).has_singleton():
                yield w


def _matrix_name(m: CoxeterMatrix) -> str:
    return repr(m)


def verify_lemma2(
    matrices: Iterable[CoxeterMatrix], max_length: int = 8, n_letters: int = 4, *, method: str = "solver"
) -> VerifyResult:
    """A word in which some letter occurs exactly once is never the identity.

    ``method="geometric"`` decides identity through the integer reflection
    representation in batches, which only covers entries in {2, 3, inf}.
    """
    res = VerifyResult("lemma2")
    matrices = list(matrices)
    if method == "solver":
        for w in singleton_words(max_length, n_letters):
            for m in matrices:
                res.record(not is_identity_coxeter(m, w), lambda: f"{w} is the identity for {_matrix_name(m)}")
        return res
    if method != "geometric":
        raise ValueError(f"unknown method {method!r}")
    by_length: dict[int, list[tuple[int, ...]]] = {}
    for w in singleton_words(max_length, n_letters):
        by_length.setdefault(len(w), []).append(w)
    for length, words in sorted(by_length.items()):
        arr = np.array(words, dtype=np.int64)
        for m in matrices:
            hits = np.flatnonzero(identity_mask_geometric(m, arr))
            res.checked += len(words)
            res.failures += len(hits)
            if len(hits) and res.counterexample is None:
                res.counterexample = f"{words[hits[0]]} is the identity for {_matrix_name(m)}"
    return res


def verify_lemma_p2(matrices: Iterable[CoxeterMatrix], max_length: int = 8, n_letters: int = 4) -> VerifyResult:
    """Crossing-label criterion equals the solver on all pair-partition words."""
    res = VerifyResult("lemma-p2")
    words = list(pair_partition_words(max_length, n_letters))
    for m in matrices:
        for w in words:
            ok = pair_partition_identity_criterion(m, w) == is_identity_coxeter(m, w)
            res.record(ok, lambda: f"criterion and solver disagree on {w} for {_matrix_name(m)}")
    return res


def verify_lemma3(max_length: int = 10, values=(3, 4, INF)) -> VerifyResult:
    """For large type, a pair-partition word is the identity iff it is non-crossing."""
    res = VerifyResult("lemma3")
    for value in values:
        m = ConstantMatrix(value)
        for k in range(2, max_length + 1, 2):
            for v in enumerate_pair_partitions(k):
                w = v.representative_word()
                ok = (not v.inversions) == is_identity_coxeter(m, w)
                res.record(ok, lambda: f"{w}: non-crossing={not v.inversions} but solver disagrees (m={value})")
    return res


def verify_artin45(max_length: int = 10) -> VerifyResult:
    """Signed pair-partition words: criterion equals free reduction."""
    res = VerifyResult("artin45")
    for k in range(2, max_length + 1, 2):
        for v in enumerate_pair_partitions(k):
            rep = v.representative_word()
            for signs in itertools.product((1, -1), repeat=k):
                w = tuple(zip(rep, signs))
                ok = artin_pair_identity_criterion(w) == is_identity_artin_free(w)
                res.record(ok, lambda: f"criterion and free reduction disagree on {w}")
    return res


def verify_oracle(max_N: int = 4, max_k: int = 6) -> VerifyResult:
    """Partition-decomposition moments equal brute-force sums over all words."""
    res = VerifyResult("oracle")
    for value in (3, INF):
        m = ConstantMatrix(value)
        for N in range(1, max_N + 1):
            for k in range(1, max_k + 1):
                a, b = exact_moment_coxeter(m, N, k), brute_force_moment_coxeter(m, N, k)
                res.record(a == b, lambda: f"coxeter m={value} N={N} k={k}: {a} != {b}")
    for N in range(1, max_N + 1):
        for k in range(1, max_k + 1):
            if (2 * N) ** k > 10**6:
                continue
            a, b = exact_moment_artin_free(N, k), brute_force_moment_artin_free(N, k)
            res.record(a == b, lambda: f"artin N={N} k={k}: {a} != {b}")
    return res


def run_suite(name: str, *, n_matrices: int = 200, seed: int = 0) -> VerifyResult:
    if name == "lemma2":
        mats = [ConstantMatrix(3), ConstantMatrix(INF), ConstantMatrix(2)] + random_tables(8, seed=seed)
        return verify_lemma2(mats)
    if name == "lemma3":
        return verify_lemma3()
    if name == "lemma-p2":
        return verify_lemma_p2(random_tables(n_matrices, seed=seed))
    if name == "artin45":
        return verify_artin45()
    if name == "oracle":
        return verify_oracle()
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
