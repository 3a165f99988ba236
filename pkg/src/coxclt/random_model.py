"""Randomly chosen Coxeter presentations and the pair-partition statistic X_N.

Every off-diagonal entry is a pure function of (seed, min(s,t), max(s,t)):
a keyed splitmix64 hash decides whether m(s,t) = 2 (probability p) and, if
not, which value of the non-commuting support it takes.  Entries are thus
symmetric, i.i.d. over unordered pairs, and independent of query order.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .coxeter import INF, CoxeterMatrix, Entry, compact_entry, format_entry, is_identity_coxeter, parse_entry
from .partitions import PairPartition, falling_factorial

MASK = (1 << 64) - 1
STREAM_COMMUTE = 0x243F6A8885A308D3
STREAM_SUPPORT = 0x13198A2E03707344

DEFAULT_WORK_CAP = 10**8


class WorkCapError(RuntimeError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(str(value).strip())


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    z = x + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def pair_hash(seed: int, stream: int, a: int, b: int) -> int:
    x = splitmix64((seed ^ stream) & MASK)
    x = splitmix64(x ^ a)
    return splitmix64(x ^ b)


def pair_hash_np(seed: int, stream: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    x = np.uint64(splitmix64((seed ^ stream) & MASK))
    x = _splitmix64_np(np.asarray(a, dtype=np.uint64) ^ x)
    return _splitmix64_np(x ^ np.asarray(b, dtype=np.uint64))


@dataclass(frozen=True)
class Support:
    """Conditional law of m(s,t) given m(s,t) != 2; values in {3, 4, ..., inf}."""

    values: tuple[Entry, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.weights) or not self.values:
            raise ValueError("support needs matching values and weights")
        if any(v < 3 for v in self.values) or any(w <= 0 for w in self.weights):
            raise ValueError("support values must be >= 3 with positive weights")

    @classmethod
    def parse(cls, text: str) -> "Support":
        """"three", "inf", or "mixed:3=1,4=1,inf=2"."""
        text = text.strip().lower()
        if text in ("three", "all_three", "3"):
            return cls((3,), (1,))
        if text in ("inf", "infinity", "all_infinity"):
            return cls((INF,), (1,))
        if text.startswith("mixed:"):
            values, weights = [], []
            for item in text[len("mixed:"):].split(","):
                v, w = item.split("=")
                values.append(parse_entry(v))
                weights.append(int(w))
            return cls(tuple(values), tuple(weights))
        raise ValueError(f"unknown support {text!r}")

    def __str__(self) -> str:
        if self.values == (3,):
            return "three"
        if self.values == (INF,):
            return "inf"
        return "mixed:" + ",".join(f"{format_entry(v)}={w}" for v, w in zip(self.values, self.weights))

    def _cumulative(self) -> np.ndarray:
        total = sum(self.weights)
        return np.cumsum(self.weights) / total


ALL_THREE = Support((3,), (1,))
ALL_INFINITY = Support((INF,), (1,))


@dataclass(frozen=True)
class RandomModelConfig:
    p: Fraction = Fraction(1, 2)
    seed: int = 0
    support: Support = ALL_THREE
    N_schedule: tuple[int, ...] = (10, 20, 40, 80)
    k_list: tuple[int, ...] = (4,)

    def __post_init__(self):
        object.__setattr__(self, "p", parse_rational(self.p))
        if isinstance(self.support, str):
            object.__setattr__(self, "support", Support.parse(self.support))
        object.__setattr__(self, "N_schedule", tuple(int(n) for n in self.N_schedule))
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if any(n < 1 for n in self.N_schedule) or any(
            a >= b for a, b in zip(self.N_schedule, self.N_schedule[1:])
        ):
            raise ValueError("N_schedule must be strictly increasing positive integers")
        if any(k < 1 or k % 2 for k in self.k_list):
            raise ValueError("k_list must contain even positive integers")

    @classmethod
    def from_dict(cls, data: dict) -> "RandomModelConfig":
        kwargs = {}
        if "p" in data:
            kwargs["p"] = parse_rational(data["p"])
        if "seed" in data:
            kwargs["seed"] = int(data["seed"])
        if "support" in data:
            kwargs["support"] = Support.parse(str(data["support"]))
        if "N_schedule" in data:
            kwargs["N_schedule"] = tuple(data["N_schedule"])
        if "k_list" in data:
            kwargs["k_list"] = tuple(data["k_list"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "seed": self.seed,
            "support": str(self.support),
            "N_schedule": list(self.N_schedule),
            "k_list": list(self.k_list),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _threshold(p: Fraction) -> Optional[int]:
    """h < threshold  <=>  entry is 2; None means always."""
    t = math.ceil(p * (1 << 64))
    return None if t > MASK else t


@dataclass(frozen=True)
class SampledMatrix(CoxeterMatrix):
    p: Fraction
    seed: int
    support: Support = ALL_THREE
    mode = "lazy-sampled"

    def __call__(self, s: int, t: int) -> Entry:
        if s == t:
            return 1
        a, b = (s, t) if s < t else (t, s)
        thr = _threshold(self.p)
        if thr is None or pair_hash(self.seed, STREAM_COMMUTE, a, b) < thr:
            return 2
        if len(self.values) == 1:
            return self.values[0]
        u = (pair_hash(self.seed, STREAM_SUPPORT, a, b) >> 11) * 2.0**-53
        idx = int(np.searchsorted(self.support._cumulative(), u, side="right"))
        return self.values[min(idx, len(self.values) - 1)]

    @property
    def values(self) -> tuple[Entry, ...]:
        return self.support.values

    def commute_block(self, n: int) -> np.ndarray:
        """Boolean n x n array: True where m(s, t) = 2 for s, t in 1..n."""
        thr = _threshold(self.p)
        if thr is None:
            out = np.ones((n, n), dtype=bool)
        else:
            idx = np.arange(1, n + 1, dtype=np.uint64)
            a = np.minimum.outer(idx, idx)
            b = np.maximum.outer(idx, idx)
            out = pair_hash_np(self.seed, STREAM_COMMUTE, a, b) < np.uint64(thr)
        np.fill_diagonal(out, False)
        return out

    def block(self, n: int) -> np.ndarray:
        commute = self.commute_block(n)
        if len(self.values) == 1:
            other = np.full((n, n), compact_entry(self.values[0]), dtype=np.int64)
        else:
            idx = np.arange(1, n + 1, dtype=np.uint64)
            a = np.minimum.outer(idx, idx)
            b = np.maximum.outer(idx, idx)
            u = (pair_hash_np(self.seed, STREAM_SUPPORT, a, b) >> np.uint64(11)).astype(np.float64) * 2.0**-53
            pick = np.minimum(np.searchsorted(self.support._cumulative(), u, side="right"), len(self.values) - 1)
            other = np.array([compact_entry(v) for v in self.values], dtype=np.int64)[pick]
        out = np.where(commute, 2, other)
        np.fill_diagonal(out, 1)
        return out


def sample_matrix(cfg: RandomModelConfig) -> SampledMatrix:
    return SampledMatrix(cfg.p, cfg.seed, cfg.support)


def _commute_block(m: CoxeterMatrix, n: int) -> np.ndarray:
    if isinstance(m, SampledMatrix):
        return m.commute_block(n)
    out = m.block(n) == 2
    np.fill_diagonal(out, False)
    return out


def _count_labelings(r: int, edges: Sequence[tuple[int, int]], commute: np.ndarray) -> int:
    """Injective maps blocks -> letters with commute[t_i, t_j] on every edge."""
    n = commute.shape[0]
    earlier = [[i for i, j in edges if j == d] for d in range(r)]  # edges have i < j
    used = np.zeros(n, dtype=bool)
    chosen = [0] * r

    def rec(d: int) -> int:
        mask = ~used
        for i in earlier[d]:
            mask = mask & commute[chosen[i]]
        if d == r - 1:
            return int(mask.sum())
        total = 0
        for t in np.flatnonzero(mask):
            chosen[d] = t
            used[t] = True
            total += rec(d + 1)
            used[t] = False
        return total

    return rec(0)


def x_n_statistic(
    v: PairPartition,
    N: int,
    m: CoxeterMatrix,
    *,
    method: str = "labels",
    work_cap: int = DEFAULT_WORK_CAP,
) -> Fraction:
    """X_N = N^-r * #{words on letters 1..N defining v that evaluate to Id}.

    "labels" counts injective block labellings satisfying m = 2 on every
    crossing; "enumerate" builds every word and asks the word-problem solver.
    """
    r = v.n_blocks
    if N < 1:
        raise ValueError("N must be positive")
    if N**r > work_cap:
        raise WorkCapError(
            f"N^r = {N}^{r} exceeds the work cap {work_cap}; switch to Monte Carlo mode (x_n_monte_carlo)"
        )
    if method == "enumerate":
        hits = 0
        for labels in itertools.permutations(range(1, N + 1), r):
            word = [0] * v.k
            for (e, f), t in zip(v.blocks, labels):
                word[e - 1] = word[f - 1] = t
            hits += is_identity_coxeter(m, word, max_length=max(16, v.k))
        return Fraction(hits, N**r)
    if method != "labels":
        raise ValueError(f"unknown method {method!r}")
    if not v.inversions:
        return Fraction(falling_factorial(N, r), N**r)
    edges = [(i - 1, j - 1) for i, j in sorted(v.inversions)]
    return Fraction(_count_labelings(r, edges, _commute_block(m, N)), N**r)


def x_n_monte_carlo(v: PairPartition, N: int, m: CoxeterMatrix, samples: int, seed: int = 0) -> float:
    """Estimate X_N from ``samples`` uniformly drawn injective labellings."""
    r = v.n_blocks
    if r > N:
        return 0.0
    rng = np.random.default_rng(seed)
    edges = sorted(v.inversions)
    hits = 0
    for _ in range(samples):
        labels = rng.choice(N, size=r, replace=False) + 1
        hits += all(m(int(labels[i - 1]), int(labels[j - 1])) == 2 for i, j in edges)
    return falling_factorial(N, r) / N**r * hits / samples


def x_n_expectation(v: PairPartition, N: int, p) -> Fraction:
    r = v.n_blocks
    return Fraction(falling_factorial(N, r), N**r) * parse_rational(p) ** v.crossing_number


def variance_bound(v: PairPartition, N: int) -> Fraction:
    return Fraction(v.crossing_number, N * N)


@dataclass(frozen=True)
class SeriesRow:
    N: int
    value: Fraction
    expectation: Fraction
    variance_bound: Fraction

    def within(self, n_sigma: int = 3) -> bool:
        """|X_N - E X_N| <= n_sigma * sqrt(variance bound), decided exactly."""
        return (self.value - self.expectation) ** 2 <= n_sigma**2 * self.variance_bound


@dataclass(frozen=True)
class ConvergenceSeries:
    partition: PairPartition
    config: RandomModelConfig
    rows: tuple[SeriesRow, ...] = field(default_factory=tuple)

    @property
    def limit(self) -> Fraction:
        return self.config.p ** self.partition.crossing_number


def convergence_experiment(
    cfg: RandomModelConfig, v: PairPartition, *, work_cap: int = DEFAULT_WORK_CAP
) -> ConvergenceSeries:
    m = sample_matrix(cfg)  # one presentation for the whole schedule
    rows = tuple(
        SeriesRow(N, x_n_statistic(v, N, m, work_cap=work_cap), x_n_expectation(v, N, cfg.p), variance_bound(v, N))
        for N in cfg.N_schedule
    )
    return ConvergenceSeries(v, cfg, rows)


def load_config(source: Union[str, dict]) -> RandomModelConfig:
    if isinstance(source, dict):
        return RandomModelConfig.from_dict(source)
    with open(source) as fh:
        return RandomModelConfig.from_dict(json.load(fh))
