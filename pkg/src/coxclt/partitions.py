"""Set partitions and pair partitions of {1..k}.

Partitions are stored canonically: blocks sorted by their minimum, elements
ascending.  Enumeration is lazy and follows restricted-growth-string order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

MAX_K = 20


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    k: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if any(len(b) == 0 for b in blocks):
            raise PartitionError("blocks must be non-empty")
        if sorted(seen) != list(range(1, self.k + 1)):
            raise PartitionError(f"blocks {blocks} do not partition 1..{self.k}")

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "SetPartition":
        k = sum(len(b) for b in blocks)
        return cls(k, tuple(tuple(b) for b in blocks))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        """Build from a restricted growth string (0-based block labels)."""
        blocks: dict[int, list[int]] = {}
        for pos, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(pos)
        return cls(len(rgs), tuple(tuple(b) for b in blocks.values()))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def rgs(self) -> tuple[int, ...]:
        out = [0] * self.k
        for label, block in enumerate(self.blocks):
            for pos in block:
                out[pos - 1] = label
        return tuple(out)

    def representative_word(self) -> tuple[int, ...]:
        """The word on letters 1..p whose letter at each position is its block number."""
        return tuple(x + 1 for x in self.rgs())

    def has_singleton(self) -> bool:
        return any(len(b) == 1 for b in self.blocks)

    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def as_pair_partition(self) -> "PairPartition":
        if not self.is_pair_partition():
            raise PartitionError("criterion applies to pair-partition words only")
        return PairPartition(self.k, self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class PairPartition(SetPartition):
    def __post_init__(self):
        super().__post_init__()
        if not all(len(b) == 2 for b in self.blocks):
            raise PartitionError(f"{self.blocks} is not a pair partition")

    @cached_property
    def inversions(self) -> frozenset[tuple[int, int]]:
        """Pairs (i, j) of 1-based block indices with e_i < e_j < f_i < f_j."""
        return frozenset(
            (i + 1, j + 1)
            for i, (ei, fi) in enumerate(self.blocks)
            for j, (ej, fj) in enumerate(self.blocks)
            if ei < ej < fi < fj
        )

    @property
    def crossing_number(self) -> int:
        return len(self.inversions)


def partition_of_word(word: Sequence[int]) -> SetPartition:
    """Partition of positions into the fibers of position -> letter."""
    if len(word) == 0:
        raise PartitionError("empty word has no partition")
    fibers: dict[int, list[int]] = {}
    for pos, letter in enumerate(word, start=1):
        if letter < 1:
            raise PartitionError(f"letters must be positive integers, got {letter}")
        fibers.setdefault(letter, []).append(pos)
    return SetPartition(len(word), tuple(tuple(b) for b in fibers.values()))


@lru_cache(maxsize=1 << 16)
def pair_partition_of_word(word: tuple[int, ...]) -> "PairPartition":
    """Cached ``partition_of_word(word).as_pair_partition()`` for hashable words."""
    return partition_of_word(word).as_pair_partition()


def inversions(v: PairPartition) -> frozenset[tuple[int, int]]:
    return v.inversions


def is_noncrossing(v: PairPartition) -> bool:
    return not v.inversions


def _check_k(k: int, max_k: int) -> None:
    if k < 1:
        raise PartitionError(f"k must be positive, got {k}")
    if k > max_k:
        raise PartitionError(f"k={k} exceeds the enumeration cap {max_k}")


def enumerate_set_partitions(k: int, p: int, max_k: int = MAX_K) -> Iterator[SetPartition]:
    """Partitions of {1..k} into exactly p blocks, in RGS lexicographic order."""
    _check_k(k, max_k)
    if not 1 <= p <= k:
        raise PartitionError(f"block count p={p} out of range 1..{k}")

    rgs = [0] * k

    def rec(pos: int, used: int) -> Iterator[SetPartition]:
        remaining = k - pos
        if remaining == 0:
            if used == p:
                yield SetPartition.from_rgs(rgs)
            return
        # every still-unused label needs a position of its own
        if p - used > remaining:
            return
        top = min(used, p - 1)
        for label in range(top + 1):
            rgs[pos] = label
            yield from rec(pos + 1, max(used, label + 1))

    rgs[0] = 0
    yield from rec(1, 1)


def pairings(k: int, max_k: int = MAX_K) -> Iterator[tuple[tuple[int, int], ...]]:
    """Raw block tuples of every pair partition of {1..k}, in RGS lexicographic order."""
    _check_k(k, max_k)
    if k % 2:
        raise PartitionError(f"pair partitions need even k, got {k}")
    half = k // 2
    opener: list[int] = []  # opening position per label
    closer: list[int] = []  # 0 while open

    def rec(pos: int, n_open: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if pos > k:
            yield tuple(zip(opener, closer))
            return
        # closing an open arc reuses a smaller label, so it comes first in RGS order
        for label in range(len(opener)):
            if not closer[label]:
                closer[label] = pos
                yield from rec(pos + 1, n_open - 1)
                closer[label] = 0
        if n_open < k - pos + 1 and len(opener) < half:
            opener.append(pos)
            closer.append(0)
            yield from rec(pos + 1, n_open + 1)
            opener.pop()
            closer.pop()

    yield from rec(1, 0)


def enumerate_pair_partitions(k: int, max_k: int = MAX_K) -> Iterator[PairPartition]:
    """All (k-1)!! pair partitions of {1..k}, in RGS lexicographic order."""
    for blocks in pairings(k, max_k):
        yield PairPartition(k, blocks)


def crossing_count(blocks: Sequence[tuple[int, int]]) -> int:
    """|{(i, j) : e_i < e_j < f_i < f_j}| for blocks sorted by opener."""
    n = 0
    for i, (ei, fi) in enumerate(blocks):
        for ej, fj in blocks[i + 1:]:
            if ej < fi < fj:
                n += 1
    return n


def count_words_defining(v: SetPartition, n_letters: int) -> int:
    """Falling factorial N(N-1)...(N-p+1) with p the number of blocks of v."""
    return math.perm(n_letters, v.n_blocks) if v.n_blocks <= n_letters else 0


def falling_factorial(n: int, r: int) -> int:
    return math.perm(n, r) if 0 <= r <= n else 0


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def double_factorial_odd(k: int) -> int:
    """(k-1)!! for even k: the number of pair partitions of {1..k}."""
    out = 1
    for x in range(k - 1, 0, -2):
        out *= x
    return out


def stirling2(k: int, p: int) -> int:
    if k == p:
        return 1
    if p == 0 or p > k:
        return 0
    return sum((-1) ** (p - j) * math.comb(p, j) * j**k for j in range(p + 1)) // math.factorial(p)


def bell(k: int) -> int:
    return sum(stirling2(k, p) for p in range(k + 1))
