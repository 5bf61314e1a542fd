"""Small helpers for vertex sets stored as int bit masks."""

from __future__ import annotations

from typing import Iterable, Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_of_size(mask: int, size: int) -> Iterator[int]:
    """Yield all submasks of `mask` with exactly `size` bits, in lex order."""
    bits = bit_list(mask)
    if size > len(bits):
        return
    if size == 0:
        yield 0
        return
    import itertools

    for combo in itertools.combinations(bits, size):
        yield mask_of(combo)
