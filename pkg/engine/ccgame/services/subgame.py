# Subgame search: injective row and column maps embedding one game in another
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ccgame.models.matrix import GameMatrix
from ccgame.utils.bitmasks import full_mask, indices_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubgameWitness:
    # small[i][j] == large[row_map[i]][col_map[j]]
    row_map: tuple[int, ...]
    col_map: tuple[int, ...]


def verify_witness(small: GameMatrix, large: GameMatrix, witness: SubgameWitness) -> bool:
    # Both maps injective, in range, and every cell agrees
    rows, cols = witness.row_map, witness.col_map
    if len(rows) != small.rows or len(cols) != small.cols:
        return False
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return False
    if any(not 0 <= i < large.rows for i in rows) or any(not 0 <= j < large.cols for j in cols):
        return False
    image = large.cells[np.ix_(list(rows), list(cols))]
    return bool(np.array_equal(image, small.cells))


def is_subgame(small: GameMatrix, large: GameMatrix) -> SubgameWitness | None:
    """Search for injective maps placing `small` inside `large`.

    Rows of `small` are assigned one at a time, those with the most distinct
    values first. Every column of `small` keeps a bitmask of the columns of
    `large` still consistent with the rows placed so far; an empty mask ends
    the branch. Once all rows are placed, an injective column assignment is
    found by bipartite matching. The search is complete: None means no
    embedding exists.
    """
    if small.rows > large.rows or small.cols > large.cols:
        return None
    small_rows = small.to_lists()
    order = sorted(range(small.rows), key=lambda i: -len(set(small_rows[i])))
    masks = large.row_value_masks
    start = [full_mask(large.cols)] * small.cols
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def place(depth: int, candidates: list[int]) -> SubgameWitness | None:
        if depth == len(order):
            col_map = _match_columns(candidates)
            if col_map is None:
                return None
            return SubgameWitness(
                row_map=tuple(assignment[i] for i in range(small.rows)),
                col_map=tuple(col_map),
            )
        i = order[depth]
        row = small_rows[i]
        for target in range(large.rows):
            if target in used:
                continue
            target_masks = masks[target]
            narrowed = [cand & target_masks.get(v, 0) for cand, v in zip(candidates, row)]
            if not all(narrowed):
                continue
            assignment[i] = target
            used.add(target)
            found = place(depth + 1, narrowed)
            used.discard(target)
            del assignment[i]
            if found is not None:
                return found
        return None

    witness = place(0, start)
    if witness is not None:
        logger.debug(f"Embedded {small.rows}x{small.cols} game in {large.rows}x{large.cols} game")
    return witness


def _match_columns(candidates: list[int]) -> list[int] | None:
    # Kuhn's augmenting paths: column j of the small game to a distinct large column
    owner: dict[int, int] = {}

    def augment(j: int, seen: set[int]) -> bool:
        for c in indices_of(candidates[j]):
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = j
                return True
        return False

    for j in range(len(candidates)):
        if not augment(j, set()):
            return None
    col_map = [0] * len(candidates)
    for c, j in owner.items():
        col_map[j] = c
    return col_map


def set_is_subgame(small_set: Iterable[GameMatrix], large_set: Iterable[GameMatrix]) -> bool:
    # Every game of the large set contains some game of the small set
    smalls = list(small_set)
    return all(any(is_subgame(s, big) is not None for s in smalls) for big in large_set)
