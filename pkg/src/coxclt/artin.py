"""Signed words over Artin generators and free reduction.

With every m(s, t) = inf the Artin group is free, so free reduction decides
the word problem exactly.  For extra-large type the pair-partition criterion
below decides triviality of words whose letters each occur exactly twice.
"""

from __future__ import annotations

from typing import Sequence

from .partitions import pair_partition_of_word

SignedLetter = tuple[int, int]
SignedWord = tuple[SignedLetter, ...]


class ArtinError(ValueError):
    pass


def signed_word(letters: Sequence[Sequence[int]]) -> SignedWord:
    out = []
    for s, e in letters:
        if s < 1 or e not in (1, -1):
            raise ArtinError(f"bad signed letter {(s, e)}")
        out.append((int(s), int(e)))
    return tuple(out)


def parse_signed_word(text: str) -> SignedWord:
    """Parse "1,2',1" where a trailing prime marks an inverse."""
    out = []
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        exp = -1 if token.endswith("'") else 1
        out.append((int(token.rstrip("'")), exp))
    return signed_word(out)


def format_signed_word(w: SignedWord) -> str:
    return ",".join(f"{s}'" if e < 0 else str(s) for s, e in w)


def unsigned(w: SignedWord) -> tuple[int, ...]:
    return tuple(s for s, _ in w)


def free_reduce(w: Sequence[SignedLetter]) -> SignedWord:
    out: list[SignedLetter] = []
    for s, e in w:
        if out and out[-1][0] == s and out[-1][1] == -e:
            out.pop()
        else:
            out.append((s, e))
    return tuple(out)


def is_identity_artin_free(w: Sequence[SignedLetter]) -> bool:
    return not free_reduce(w)


def artin_pair_identity_criterion(w: Sequence[SignedLetter]) -> bool:
    """Non-crossing pairing with opposite exponents on each pair of positions.

    Valid for extra-large type (all m(s, t) >= 4), which includes the free case.
    """
    if not len(w):
        raise ArtinError("empty word has no partition")
    v = pair_partition_of_word(unsigned(w))
    if v.inversions:
        return False
    return all(w[e - 1][1] == -w[f - 1][1] for e, f in v.blocks)
