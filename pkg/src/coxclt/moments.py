"""Exact trace moments of normalised generator sums and their limits.

For a constant Coxeter matrix the value of the trace on a word depends only on
the partition of positions the word defines, so

    phi((s_1 + ... + s_N)^k) / N^(k/2) = N^(-k/2) * sum_V A(N, |V|) * phi(w_V)

with A(N, p) the falling factorial and w_V one representative word per set
partition V.  The same decomposition, with a sum over sign vectors, gives the
free Artin moments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .artin import is_identity_artin_free
from .coxeter import INF, ConstantMatrix, CoxeterMatrix, format_entry, is_identity_coxeter
from .partitions import (
    bell,
    catalan,
    crossing_count,
    double_factorial_odd,
    enumerate_set_partitions,
    falling_factorial,
    pairings,
)
from .random_model import WorkCapError, parse_rational

MAX_MOMENT_K = 12
DEFAULT_SOLVER_CAP = 10**7
ENUMERATION_K = 14


class MomentError(ValueError):
    pass


# ------------------------------------------------------------- Coxeter


@lru_cache(maxsize=None)
def _coxeter_profile(value, k: int) -> tuple[int, ...]:
    """Number of identity set partitions of {1..k} with p blocks, p = 0..k."""
    m = ConstantMatrix(value)
    counts = [0] * (k + 1)
    for p in range(1, k + 1):
        for v in enumerate_set_partitions(k, p):
            counts[p] += is_identity_coxeter(m, v.representative_word(), max_length=k)
    return tuple(counts)


def _check_k(k: int, per_partition: int, cap: int) -> None:
    if k < 1:
        raise MomentError("k must be positive")
    if k > MAX_MOMENT_K:
        raise MomentError(f"k={k} exceeds the supported maximum {MAX_MOMENT_K}")
    work = bell(k) * per_partition
    if work > cap:
        raise WorkCapError(f"moment of order {k} needs {work} solver calls, over the cap {cap}")


def exact_moment_coxeter(m: CoxeterMatrix, N: int, k: int, *, cap: int = DEFAULT_SOLVER_CAP) -> Fraction:
    """phi(((s_1 + ... + s_N) / sqrt(N))^k) for a constant Coxeter matrix."""
    if not isinstance(m, ConstantMatrix):
        raise MomentError(
            "the partition shortcut needs a constant matrix; use x_n_statistic for other matrices"
        )
    if N < 1:
        raise MomentError("N must be positive")
    if k % 2:
        return Fraction(0)
    _check_k(k, 1, cap)
    profile = _coxeter_profile(m.value, k)
    total = sum(c * falling_factorial(N, p) for p, c in enumerate(profile))
    return Fraction(total, N ** (k // 2))


def brute_force_moment_coxeter(m: CoxeterMatrix, N: int, k: int) -> Fraction:
    """Direct sum over all N^k words; the reference for small N and k."""
    if k % 2:
        return Fraction(0)
    hits = sum(is_identity_coxeter(m, w, max_length=max(16, k)) for w in itertools.product(range(1, N + 1), repeat=k))
    return Fraction(hits, N ** (k // 2))


# ------------------------------------------------------------- Artin (free)


def _signed_identity_count(rep: tuple[int, ...]) -> int:
    k = len(rep)
    hits = 0
    for signs in itertools.product((1, -1), repeat=k):
        sums: dict[int, int] = {}
        for s, e in zip(rep, signs):
            sums[s] = sums.get(s, 0) + e
        # a free-group identity has zero exponent sum in every letter
        if any(sums.values()):
            continue
        hits += is_identity_artin_free(tuple(zip(rep, signs)))
    return hits


@lru_cache(maxsize=None)
def _artin_profile(k: int) -> tuple[int, ...]:
    counts = [0] * (k + 1)
    for p in range(1, k + 1):
        for v in enumerate_set_partitions(k, p):
            counts[p] += _signed_identity_count(v.representative_word())
    return tuple(counts)


def exact_moment_artin_free(N: int, k: int, *, cap: int = DEFAULT_SOLVER_CAP) -> Fraction:
    """phi_A(((a_1 + a_1^-1 + ... + a_N + a_N^-1) / sqrt(2N))^k) with all m = inf."""
    if N < 1:
        raise MomentError("N must be positive")
    if k % 2:
        return Fraction(0)
    _check_k(k, 2**k, cap)
    total = sum(c * falling_factorial(N, p) for p, c in enumerate(_artin_profile(k)))
    return Fraction(total, (2 * N) ** (k // 2))


def brute_force_moment_artin_free(N: int, k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    letters = [(s, e) for s in range(1, N + 1) for e in (1, -1)]
    hits = sum(is_identity_artin_free(w) for w in itertools.product(letters, repeat=k))
    return Fraction(hits, (2 * N) ** (k // 2))


# ------------------------------------------------------------- limits


def limit_moment_semicircle(k: int) -> int:
    return 0 if k % 2 else catalan(k // 2)


@dataclass(frozen=True)
class LimitPolynomial:
    """Coefficients c_0..c_d of sum over pair partitions V of p^|I(V)|."""

    coefficients: tuple[int, ...]

    def __call__(self, p) -> Fraction:
        p = parse_rational(p)
        out = Fraction(0)
        for c in reversed(self.coefficients):
            out = out * p + c
        return out

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            power = "p" if i == 1 else f"p^{i}"
            terms.append(power if c == 1 else f"{c}{power}")
        return " + ".join(terms) if terms else "0"


def _tally(counts: dict[int, int]) -> tuple[int, ...]:
    if not counts:
        return (0,)
    return tuple(counts.get(i, 0) for i in range(max(counts) + 1))


def crossing_polynomial_by_arcs(k: int) -> tuple[int, ...]:
    """Same tally, scanning positions left to right over open arcs.

    Closing the arc opened j-th most recently crosses exactly the j - 1 arcs
    opened after it, so each closing step multiplies by 1 + p + ... + p^(h-1)
    where h is the number of open arcs.
    """
    if k % 2:
        return (0,)
    # state: open-arc count -> polynomial (list of ints)
    states: dict[int, list[int]] = {0: [1]}
    for _ in range(k):
        nxt: dict[int, list[int]] = {}
        for h, poly in states.items():
            if h + 1 <= k // 2:
                _add_into(nxt.setdefault(h + 1, []), poly, 0)
            if h > 0:
                target = nxt.setdefault(h - 1, [])
                for shift in range(h):
                    _add_into(target, poly, shift)
        states = nxt
    poly = states.get(0, [0])
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _add_into(target: list[int], poly: list[int], shift: int) -> None:
    need = len(poly) + shift
    if len(target) < need:
        target.extend([0] * (need - len(target)))
    for i, c in enumerate(poly):
        target[i + shift] += c


def limit_polynomial_q(k: int, *, method: str = "auto") -> LimitPolynomial:
    """Limit of the k-th moment under the random model, as a polynomial in p.

    "enumerate" walks all (k-1)!! pair partitions; "arcs" runs the open-arc
    transfer recursion.  "auto" enumerates up to k = 14.
    """
    if k < 1 or k > 20:
        raise MomentError(f"k must lie in 1..20, got {k}")
    if k % 2:
        return LimitPolynomial((0,))
    if method == "auto":
        method = "enumerate" if k <= ENUMERATION_K else "arcs"
    if method == "arcs":
        return LimitPolynomial(crossing_polynomial_by_arcs(k))
    if method != "enumerate":
        raise MomentError(f"unknown method {method!r}")
    return LimitPolynomial(_enumerated_tally(k))


@lru_cache(maxsize=None)
def _enumerated_tally(k: int) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for blocks in pairings(k):
        c = crossing_count(blocks)
        counts[c] = counts.get(c, 0) + 1
    return _tally(counts)


def q_moment_fast(n: int, q) -> Fraction:
    """Touchard-Riordan closed form for sum over pairings of {1..2n} of q^crossings.

    At q = 1 the closed form has a removable singularity and the polynomial
    recursion is used instead.
    """
    q = parse_rational(q)
    if n < 0:
        raise MomentError("n must be non-negative")
    if q == 1:
        return LimitPolynomial(crossing_polynomial_by_arcs(2 * n))(q)
    total = Fraction(0)
    for j in range(n + 1):
        ballot = math.comb(2 * n, n - j) - (math.comb(2 * n, n - j - 1) if n - j - 1 >= 0 else 0)
        total += (-1) ** j * ballot * q ** (j * (j + 1) // 2)
    return total / (1 - q) ** n


# ------------------------------------------------------------- reports


@dataclass(frozen=True)
class MomentRow:
    N: int
    k: int
    moment: Fraction
    limit: Fraction

    @property
    def moment_float(self) -> float:
        return float(self.moment)

    @property
    def abs_diff(self) -> Fraction:
        return abs(self.moment - self.limit)


@dataclass(frozen=True)
class MomentReport:
    family: str
    params: dict = field(default_factory=dict)
    rows: tuple[MomentRow, ...] = ()

    def metadata(self) -> dict:
        return {"family": self.family, **self.params}


def _limit_for(family: str, m_value, k: int) -> Fraction:
    if k % 2:
        return Fraction(0)
    if family == "coxeter" and m_value == 2:
        return Fraction(double_factorial_odd(k))  # everything commutes
    return Fraction(limit_moment_semicircle(k))


def convergence_table(
    family: str,
    N_schedule: Sequence[int],
    k_list: Sequence[int],
    *,
    m=3,
    cap: int = DEFAULT_SOLVER_CAP,
) -> MomentReport:
    """Exact moments along ``N_schedule`` for each k, with limits and gaps.

    ``family`` is "coxeter" (constant matrix with off-diagonal value ``m``)
    or "artin" (free Artin group).
    """
    rows = []
    if family == "coxeter":
        matrix = ConstantMatrix(m)
        params = {"m": format_entry(matrix.value), "matrix_mode": "constant"}
        for k in k_list:
            for N in N_schedule:
                rows.append(MomentRow(N, k, exact_moment_coxeter(matrix, N, k, cap=cap), _limit_for(family, matrix.value, k)))
    elif family == "artin":
        params = {"m": format_entry(INF), "matrix_mode": "free"}
        for k in k_list:
            for N in N_schedule:
                rows.append(MomentRow(N, k, exact_moment_artin_free(N, k, cap=cap), _limit_for(family, INF, k)))
    else:
        raise MomentError(f"unknown family {family!r}")
    return MomentReport(family, params, tuple(rows))
