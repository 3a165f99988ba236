"""Coxeter matrices and a complete solver for the Coxeter word problem.

The general solver is Tits's procedure: explore the class of words reachable by
braid moves (``stst.. -> tsts..`` of length m(s,t)) and delete an adjacent pair
``ss`` as soon as one shows up in any member of the class.  A word whose class
contains no such pair is reduced.  Two complete fast paths cover the free
product of order-2 groups (all m = inf) and the right-angled case (m in {2, inf}).

Generators are 1-based.  ``INF`` marks a pair with no relation.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .partitions import PartitionError, pair_partition_of_word

INF = math.inf
Entry = Union[int, float]

MAX_WORD_LENGTH = 16
CLASS_CAP = 10**6

Word = tuple[int, ...]


class CoxeterError(ValueError):
    pass


class ClassExplosionError(CoxeterError):
    pass


def parse_entry(value) -> Entry:
    """Accept an int, an int-like string, or "inf"; 0 is the compact encoding of inf."""
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        value = int(value)
    if isinstance(value, float):
        if math.isinf(value):
            return INF
        value = int(value)
    if value == 0:
        return INF
    if value < 1:
        raise CoxeterError(f"invalid Coxeter matrix entry {value!r}")
    return int(value)


def format_entry(value: Entry) -> Union[int, str]:
    return "inf" if value == INF else int(value)


def compact_entry(value: Entry) -> int:
    return 0 if value == INF else int(value)


class CoxeterMatrix:
    """Accessor m(s, t) over the countably infinite generator set {1, 2, ...}."""

    mode: str = "abstract"

    def __call__(self, s: int, t: int) -> Entry:
        raise NotImplementedError

    def block(self, n: int) -> np.ndarray:
        """Entries for generators 1..n as an n x n int64 array, inf encoded as 0."""
        out = np.ones((n, n), dtype=np.int64)
        for s in range(1, n + 1):
            for t in range(s + 1, n + 1):
                out[s - 1, t - 1] = out[t - 1, s - 1] = compact_entry(self(s, t))
        return out

    def signature(self, letters: Sequence[int]) -> tuple[Entry, ...]:
        """Upper-triangle entries among ``letters`` (taken in the given order)."""
        return tuple(self(a, b) for i, a in enumerate(letters) for b in letters[i + 1:])


@dataclass(frozen=True)
class ConstantMatrix(CoxeterMatrix):
    value: Entry
    mode = "constant"

    def __post_init__(self):
        object.__setattr__(self, "value", parse_entry(self.value))

    def __call__(self, s: int, t: int) -> Entry:
        return 1 if s == t else self.value

    def block(self, n: int) -> np.ndarray:
        out = np.full((n, n), compact_entry(self.value), dtype=np.int64)
        np.fill_diagonal(out, 1)
        return out

    def to_json(self) -> dict:
        return {"default": format_entry(self.value), "entries": []}


@dataclass(frozen=True)
class TableMatrix(CoxeterMatrix):
    """Explicit entries with a default for every pair not listed.

    Entries are stored exactly as given so that asymmetric or malformed input
    is visible to :func:`validate_matrix`; a lookup of (s, t) falls back to
    (t, s), then to the diagonal value 1, then to ``default``.
    """

    default: Entry = INF
    entries: Mapping[tuple[int, int], Entry] = field(default_factory=dict)
    mode = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "default", parse_entry(self.default))
        object.__setattr__(
            self, "entries", {(int(s), int(t)): parse_entry(v) for (s, t), v in self.entries.items()}
        )

    def __hash__(self):
        return hash((self.default, tuple(sorted(self.entries.items()))))

    def __call__(self, s: int, t: int) -> Entry:
        if (s, t) in self.entries:
            return self.entries[(s, t)]
        if (t, s) in self.entries:
            return self.entries[(t, s)]
        return 1 if s == t else self.default

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "TableMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        entries = {(int(s), int(t)): v for s, t, v in data.get("entries", [])}
        return cls(data.get("default", "inf"), entries)

    def to_json(self) -> dict:
        return {
            "default": format_entry(self.default),
            "entries": [[s, t, format_entry(v)] for (s, t), v in sorted(self.entries.items())],
        }


@dataclass(frozen=True)
class MatrixCheck:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_matrix(m: CoxeterMatrix, probe_indices: Iterable[int]) -> MatrixCheck:
    idx = sorted(set(probe_indices))
    problems = []
    for s in idx:
        if m(s, s) != 1:
            problems.append(f"m({s},{s}) = {m(s, s)}, expected 1")
        for t in idx:
            if s == t:
                continue
            if m(s, t) != m(t, s):
                problems.append(f"m({s},{t}) = {m(s, t)} but m({t},{s}) = {m(t, s)}")
            if m(s, t) < 2:
                problems.append(f"m({s},{t}) = {m(s, t)} < 2")
    return MatrixCheck(not problems, tuple(problems))


@dataclass(frozen=True)
class ReductionOutcome:
    reduced: Word
    braid_class_size: int
    is_identity: bool


# ---------------------------------------------------------------- solvers


def _adjacent_pair(w: Word) -> int:
    for i in range(len(w) - 1):
        if w[i] == w[i + 1]:
            return i
    return -1


def _braid_neighbours(w: Word, m: dict) -> Iterable[Word]:
    n = len(w)
    for i in range(n - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        k = m[(s, t)]
        if k == INF or i + k > n:
            continue
        seg = w[i:i + k]
        if all(seg[j] == (s if j % 2 == 0 else t) for j in range(k)):
            swapped = tuple(t if j % 2 == 0 else s for j in range(k))
            yield w[:i] + swapped + w[i + k:]


def _pair_table(n_letters: int, sig: tuple[Entry, ...]) -> dict:
    m = {}
    it = iter(sig)
    for a in range(1, n_letters + 1):
        for b in range(a + 1, n_letters + 1):
            m[(a, b)] = m[(b, a)] = next(it)
    return m


@lru_cache(maxsize=1 << 18)
def _tits_reduce(word: Word, n_letters: int, sig: tuple[Entry, ...], class_cap: int) -> tuple[Word, int]:
    m = _pair_table(n_letters, sig)
    current = word
    while True:
        i = _adjacent_pair(current)
        if i >= 0:
            current = current[:i] + current[i + 2:]
            continue
        seen = {current}
        queue = deque([current])
        shortened = None
        while queue and shortened is None:
            u = queue.popleft()
            for v in _braid_neighbours(u, m):
                if v in seen:
                    continue
                j = _adjacent_pair(v)
                if j >= 0:
                    shortened = v[:j] + v[j + 2:]
                    break
                seen.add(v)
                if len(seen) > class_cap:
                    raise ClassExplosionError(
                        f"class explosion: braid class of {current} exceeds {class_cap} words"
                    )
                queue.append(v)
        if shortened is None:
            return min(seen), len(seen)
        current = shortened


def stack_reduce(word: Sequence[int]) -> Word:
    """Cancel adjacent equal letters; complete when every m(s,t) is inf."""
    out: list[int] = []
    for s in word:
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def shuffle_reduce(word: Sequence[int], commute) -> Word:
    """Normal form for right-angled matrices (every m(s,t) in {2, inf}).

    ``commute(s, t)`` says whether m(s, t) == 2.  A new letter cancels the last
    occurrence of itself if everything after that occurrence commutes with it.
    The result is the lexicographically smallest word of its commutation class.
    """
    out: list[int] = []
    for s in word:
        for j in range(len(out) - 1, -1, -1):
            if out[j] == s:
                del out[j]
                break
            if not commute(out[j], s):
                out.append(s)
                break
        else:
            out.append(s)
    # greedy: repeatedly pull out the smallest letter that can move to the front
    rest = out
    result = []
    while rest:
        best = None
        for j, s in enumerate(rest):
            if (best is None or s < rest[best]) and all(commute(x, s) for x in rest[:j]):
                best = j
        result.append(rest[best])
        rest = rest[:best] + rest[best + 1:]
    return tuple(result)


def _ranked(word: Sequence[int]) -> tuple[list[int], Word]:
    letters = sorted(set(word))
    rank = {s: i + 1 for i, s in enumerate(letters)}
    return letters, tuple(rank[s] for s in word)


def _check_word(word: Sequence[int], max_length: int) -> Word:
    w = tuple(int(s) for s in word)
    if len(w) > max_length:
        raise CoxeterError(f"word length {len(w)} exceeds the cap {max_length}")
    if any(s < 1 for s in w):
        raise CoxeterError("generator indices are positive integers")
    return w


def _checked_signature(m: CoxeterMatrix, letters: Sequence[int]) -> tuple[Entry, ...]:
    sig = m.signature(letters)
    if any(v < 2 for v in sig):
        raise CoxeterError(f"matrix has an off-diagonal entry < 2 on letters {list(letters)}")
    return sig


def reduce_word(
    m: CoxeterMatrix,
    w: Sequence[int],
    *,
    method: str = "auto",
    max_length: int = MAX_WORD_LENGTH,
    class_cap: int = CLASS_CAP,
) -> ReductionOutcome:
    """Reduce ``w`` to the lexicographically smallest geodesic representing it.

    ``method`` is one of "auto", "bfs" (Tits braid classes), "stack" (all
    m = inf) or "shuffle" (all m in {2, inf}).  "auto" picks the cheapest
    complete method for the letters that occur in ``w``.
    """
    word = _check_word(w, max_length)
    if not word:
        return ReductionOutcome((), 1, True)
    letters, ranked = _ranked(word)
    sig = _checked_signature(m, letters)
    if method == "auto":
        if all(v == INF for v in sig):
            method = "stack"
        elif all(v in (2, INF) for v in sig):
            method = "shuffle"
        else:
            method = "bfs"

    if method == "bfs":
        reduced_ranked, size = _tits_reduce(ranked, len(letters), sig, class_cap)
        reduced = tuple(letters[s - 1] for s in reduced_ranked)
        return ReductionOutcome(reduced, size, not reduced)
    if method == "stack":
        if any(v != INF for v in sig):
            raise CoxeterError("stack reduction needs m(s,t) = inf on all letters")
        reduced = stack_reduce(word)
        return ReductionOutcome(reduced, 1, not reduced)
    if method == "shuffle":
        if any(v not in (2, INF) for v in sig):
            raise CoxeterError("shuffle reduction needs m(s,t) in {2, inf} on all letters")
        table = _pair_table(len(letters), sig)
        pos = {s: i + 1 for i, s in enumerate(letters)}
        reduced = shuffle_reduce(word, lambda a, b: a != b and table[(pos[a], pos[b])] == 2)
        return ReductionOutcome(reduced, _commutation_class_size(reduced, m), not reduced)
    raise CoxeterError(f"unknown method {method!r}")


def _commutation_class_size(w: Word, m: CoxeterMatrix) -> int:
    # number of linear extensions of the heap; only a diagnostic, so small words only
    if len(w) > 10:
        return -1

    @lru_cache(maxsize=None)
    def count(rest: Word) -> int:
        if not rest:
            return 1
        total = 0
        for j, s in enumerate(rest):
            if s not in rest[:j] and all(m(x, s) == 2 for x in rest[:j]):
                total += count(rest[:j] + rest[j + 1:])
        return total

    return count(w)


@lru_cache(maxsize=1 << 18)
def _identity_canonical(word: Word, n_letters: int, sig: tuple[Entry, ...]) -> bool:
    if all(v == INF for v in sig):
        return not stack_reduce(word)
    if all(v in (2, INF) for v in sig):
        table = _pair_table(n_letters, sig)
        return not shuffle_reduce(word, lambda a, b: a != b and table[(a, b)] == 2)
    return not _tits_reduce(word, n_letters, sig, CLASS_CAP)[0]


def is_identity_coxeter(m: CoxeterMatrix, w: Sequence[int], *, max_length: int = MAX_WORD_LENGTH) -> bool:
    """Whether ``w`` evaluates to the identity of the Coxeter group of ``m``.

    Answers are memoised on the word relabelled by first occurrence together
    with the relabelled matrix entries; relabelling generators is a group
    isomorphism, so this never changes an answer.
    """
    word = _check_word(w, max_length)
    if len(word) % 2:
        return False
    if not word:
        return True
    order: dict[int, int] = {}
    for s in word:
        order.setdefault(s, len(order) + 1)
    letters = list(order)
    sig = _checked_signature(m, letters)
    return _identity_canonical(tuple(order[s] for s in word), len(letters), sig)


def pair_partition_identity_criterion(m: CoxeterMatrix, w: Sequence[int]) -> bool:
    """Every crossing pair of arcs must carry letters s, t with m(s, t) = 2."""
    if not len(w):
        raise PartitionError("empty word has no partition")
    v = pair_partition_of_word(tuple(w))
    labels = [w[e - 1] for e, _ in v.blocks]
    return all(m(labels[i - 1], labels[j - 1]) == 2 for i, j in v.inversions)


# ------------------------------------------------------------- geometric representation

GEOMETRIC_VALUES = (2, 3, INF)
GEOMETRIC_MAX_LENGTH = 20


def geometric_generators(m: CoxeterMatrix, n: int) -> np.ndarray:
    """Integer matrices of the reflections s_1..s_n in the Tits representation.

    s acts by e_t -> e_t - 2B(e_s, e_t) e_s with B(e_s, e_t) = -cos(pi / m(s, t)).
    For m in {2, 3, inf} the coefficient -2B is 0, 1 or 2, so everything
    stays integral.  The representation is faithful.
    """
    blk = m.block(n)
    coeff = {2: 0, 3: 1, 0: 2}
    gens = np.zeros((n, n, n), dtype=np.int64)
    for s in range(n):
        gens[s] = np.eye(n, dtype=np.int64)
        for t in range(n):
            if t == s:
                gens[s, s, s] = -1
                continue
            v = int(blk[s, t])
            if v not in coeff:
                raise CoxeterError(f"geometric check needs entries in {{2, 3, inf}}, got m({s + 1},{t + 1}) = {v}")
            gens[s, s, t] = coeff[v]
    return gens


def identity_mask_geometric(m: CoxeterMatrix, words: np.ndarray) -> np.ndarray:
    """Vectorised identity test for equal-length words (rows of ``words``).

    Exact integer arithmetic; lengths are capped so entries cannot overflow.
    """
    words = np.asarray(words, dtype=np.int64)
    if words.ndim != 2:
        raise CoxeterError("words must be a 2-d array, one word per row")
    count, length = words.shape
    if length > GEOMETRIC_MAX_LENGTH:
        raise CoxeterError(f"word length {length} exceeds the cap {GEOMETRIC_MAX_LENGTH}")
    if count == 0:
        return np.zeros(0, dtype=bool)
    if words.min() < 1:
        raise CoxeterError("generator indices are positive integers")
    n = int(words.max())
    gens = geometric_generators(m, n)
    prod = np.broadcast_to(np.eye(n, dtype=np.int64), (count, n, n))
    for j in range(length):
        prod = prod @ gens[words[:, j] - 1]
    return (prod == np.eye(n, dtype=np.int64)).all(axis=(1, 2))
