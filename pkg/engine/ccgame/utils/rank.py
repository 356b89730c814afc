# Exact integer rank and the rank-based lower bounds on protocol depth
from __future__ import annotations

from typing import Sequence

import numpy as np


def integer_rank(rows: Sequence[Sequence[int]] | np.ndarray) -> int:
    # Fraction-free Bareiss elimination; every division is exact
    a = [[int(v) for v in row] for row in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        lead = a[rank][col]
        for i in range(rank + 1, m):
            factor = a[i][col]
            row = a[i]
            top = a[rank]
            for j in range(col + 1, n):
                row[j] = (row[j] * lead - factor * top[j]) // prev
            row[col] = 0
        prev = lead
        rank += 1
        if rank == m:
            break
    return rank


def ceil_log2(value: int) -> int:
    # Smallest d >= 0 with 2^d >= value
    if value <= 1:
        return 0
    return (value - 1).bit_length()


def value_indicator_ranks(cells: np.ndarray) -> dict[int, int]:
    # rank of the 0/1 indicator of each value present
    return {int(v): integer_rank((cells == v).astype(np.int64)) for v in np.unique(cells)}


def leaf_count_bound(cells: np.ndarray) -> int:
    # A depth-d protocol has at most 2^d leaves and each value's indicator
    # splits into at least rank-many monochromatic rectangles
    return ceil_log2(sum(value_indicator_ranks(cells).values()))


def log_rank_bound(cells: np.ndarray) -> int:
    # ceil(log2 rank) of a boolean matrix
    return ceil_log2(integer_rank(cells))
