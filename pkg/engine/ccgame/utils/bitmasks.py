# Index sets as Python int bitmasks
from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full_mask(size: int) -> int:
    return (1 << size) - 1


def indices_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def canonical_blocks(classes: Sequence[int]) -> Iterator[int]:
    """Yield one side of every bipartition of a list of classes.

    Each class is a mask of indices that must stay together. A bipartition
    and its mirror describe the same split, so only blocks containing the
    first class are produced, smallest selector first.
    """
    k = len(classes)
    if k < 2:
        return
    rest = classes[1:]
    # selector over classes[1:], excluding the all-ones selector (block = everything)
    for selector in range((1 << (k - 1)) - 1):
        block = classes[0]
        bits = selector
        idx = 0
        while bits:
            if bits & 1:
                block |= rest[idx]
            bits >>= 1
            idx += 1
        yield block
