# Deterministic communication complexity: exact search, reference recursion and greedy upper bound
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ccgame.config import SolverPolicy, resolve_policy
from ccgame.constants import GREEDY_FULL_ENUMERATION_CLASSES, REFERENCE_MAX_ALPHABET, REFERENCE_MAX_SIDE
from ccgame.exceptions import DomainError, SizeGuardError
from ccgame.models.matrix import GameMatrix
from ccgame.models.protocol import ProtocolLeaf, ProtocolNode, ProtocolTree, protocol_depth
from ccgame.utils.bitmasks import canonical_blocks, full_mask, indices_of, lowest_index, popcount
from ccgame.utils.rank import ceil_log2, leaf_count_bound, log_rank_bound

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverStats:
    # rectangles expanded, memo answers, bound cut-offs, depth budgets tried
    nodes: int = 0
    memo_hits: int = 0
    pruned: int = 0
    budgets_tried: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    depth: int | None
    tree: ProtocolTree | None
    method: str
    stats: SolverStats | None = None

    @property
    def exceeded_budget(self) -> bool:
        return self.depth is None


class _Rectangles:
    """Bitmask view of a game; a rectangle is a (row mask, column mask) pair."""

    def __init__(self, matrix: GameMatrix):
        self.matrix = matrix
        self.cells = matrix.to_lists()
        self.row_masks = matrix.row_value_masks
        self.col_masks = matrix.col_value_masks
        self._bounds: dict[tuple[int, int], int] = {}

    def monochrome_value(self, rows: int, cols: int) -> int | None:
        v = self.cells[lowest_index(rows)][lowest_index(cols)]
        for i in indices_of(rows):
            if self.row_masks[i].get(v, 0) & cols != cols:
                return None
        return v

    def row_classes(self, rows: int, cols: int) -> list[int]:
        # Rows that agree on every live column, as masks ordered by first row
        groups: dict[tuple, int] = {}
        for i in indices_of(rows):
            key = tuple(sorted((v, m & cols) for v, m in self.row_masks[i].items() if m & cols))
            groups[key] = groups.get(key, 0) | (1 << i)
        return list(groups.values())

    def col_classes(self, rows: int, cols: int) -> list[int]:
        groups: dict[tuple, int] = {}
        for j in indices_of(cols):
            key = tuple(sorted((v, m & rows) for v, m in self.col_masks[j].items() if m & rows))
            groups[key] = groups.get(key, 0) | (1 << j)
        return list(groups.values())

    def bound(self, rows: int, cols: int) -> int:
        key = (rows, cols)
        cached = self._bounds.get(key)
        if cached is None:
            # identical lines change no rank, so bound the deduplicated rectangle
            row_reps = [lowest_index(c) for c in self.row_classes(rows, cols)]
            col_reps = [lowest_index(c) for c in self.col_classes(rows, cols)]
            cached = leaf_count_bound(self.matrix.cells[np.ix_(row_reps, col_reps)])
            self._bounds[key] = cached
        return cached


class _ExactSearch:
    def __init__(self, rect: _Rectangles):
        self.rect = rect
        self.solved: dict[tuple[int, int], tuple[int, ProtocolTree]] = {}
        # largest budget proven too small for a rectangle
        self.infeasible: dict[tuple[int, int], int] = {}
        self.nodes = 0
        self.memo_hits = 0
        self.pruned = 0

    def solve(self, rows: int, cols: int, budget: int) -> ProtocolTree | None:
        value = self.rect.monochrome_value(rows, cols)
        if value is not None:
            return ProtocolLeaf(value)
        if budget <= 0:
            return None
        key = (rows, cols)
        hit = self.solved.get(key)
        if hit is not None and hit[0] <= budget:
            self.memo_hits += 1
            return hit[1]
        if self.infeasible.get(key, -1) >= budget:
            self.memo_hits += 1
            return None
        if self.rect.bound(rows, cols) > budget:
            self.pruned += 1
            self._mark_infeasible(key, budget)
            return None
        self.nodes += 1
        sides = [
            ("row", self.rect.row_classes(rows, cols)),
            ("col", self.rect.col_classes(rows, cols)),
        ]
        # fewer classes means fewer bipartitions; rows win ties
        sides.sort(key=lambda side: len(side[1]))
        for player, classes in sides:
            live = rows if player == "row" else cols
            for block in canonical_blocks(classes):
                rest = live & ~block
                if player == "row":
                    first, second = (block, cols), (rest, cols)
                else:
                    first, second = (rows, block), (rows, rest)
                left = self.solve(*first, budget - 1)
                if left is None:
                    continue
                right = self.solve(*second, budget - 1)
                if right is None:
                    continue
                tree = ProtocolNode(player=player, left=tuple(indices_of(block)), children=(left, right))
                self.solved[key] = (protocol_depth(tree), tree)
                return tree
        self._mark_infeasible(key, budget)
        return None

    def _mark_infeasible(self, key: tuple[int, int], budget: int) -> None:
        self.infeasible[key] = max(self.infeasible.get(key, -1), budget)


def _check_policy(matrix: GameMatrix, policy: SolverPolicy) -> None:
    if not policy.admits(matrix.rows, matrix.cols):
        raise SizeGuardError(
            f"Exact solving of a {matrix.rows}x{matrix.cols} game is outside the solver policy "
            f"(min side <= {policy.min_side}, max side <= {policy.max_side})",
            requested=matrix.cell_count,
        )


def solve_exact(
    matrix: GameMatrix, depth_budget: int | None = None, policy: SolverPolicy | None = None
) -> SolveResult:
    """Exact deterministic communication complexity with an optimal protocol tree.

    Depth budgets are tried upward from the rank lower bound; the first
    feasible budget is the complexity. With `depth_budget`, a game needing
    more bits returns depth None instead of searching further.
    """
    policy = resolve_policy(policy)
    _check_policy(matrix, policy)
    started = time.perf_counter()
    rect = _Rectangles(matrix)
    search = _ExactSearch(rect)
    rows, cols = full_mask(matrix.rows), full_mask(matrix.cols)
    lower = rect.bound(rows, cols)
    # sending both indices always works
    ceiling = ceil_log2(matrix.rows) + ceil_log2(matrix.cols)
    if depth_budget is not None:
        ceiling = min(ceiling, depth_budget)
    tree = None
    tried = 0
    for budget in range(lower, ceiling + 1):
        tried += 1
        tree = search.solve(rows, cols, budget)
        if tree is not None:
            break
    stats = SolverStats(
        nodes=search.nodes,
        memo_hits=search.memo_hits,
        pruned=search.pruned,
        budgets_tried=tried,
        seconds=time.perf_counter() - started,
    )
    if tree is None:
        logger.debug(f"No protocol within {depth_budget} bits for a {matrix.rows}x{matrix.cols} game")
        return SolveResult(depth=None, tree=None, method="exact", stats=stats)
    depth = protocol_depth(tree)
    logger.debug(f"Exact D = {depth} for a {matrix.rows}x{matrix.cols} game ({stats.nodes} nodes)")
    return SolveResult(depth=depth, tree=tree, method="exact", stats=stats)


def solve_reference(matrix: GameMatrix) -> int:
    # Plain recursion over every split; kept small enough to trust by inspection
    if (
        matrix.rows > REFERENCE_MAX_SIDE
        or matrix.cols > REFERENCE_MAX_SIDE
        or matrix.alphabet_size > REFERENCE_MAX_ALPHABET
    ):
        raise SizeGuardError(
            f"Reference solver is capped at {REFERENCE_MAX_SIDE}x{REFERENCE_MAX_SIDE}, "
            f"alphabet {REFERENCE_MAX_ALPHABET}; got {matrix.rows}x{matrix.cols}, alphabet {matrix.alphabet_size}"
        )
    cells = matrix.to_lists()

    @lru_cache(maxsize=None)
    def depth(rows: int, cols: int) -> int:
        values = {cells[i][j] for i in indices_of(rows) for j in indices_of(cols)}
        if len(values) == 1:
            return 0
        best = None
        for live, is_row in ((rows, True), (cols, False)):
            sub = (live - 1) & live
            while sub:
                other = live & ~sub
                if is_row:
                    cost = 1 + max(depth(sub, cols), depth(other, cols))
                else:
                    cost = 1 + max(depth(rows, sub), depth(rows, other))
                best = cost if best is None else min(best, cost)
                sub = (sub - 1) & live
        return best

    return depth(full_mask(matrix.rows), full_mask(matrix.cols))


def lower_bound_leafcount(matrix: GameMatrix) -> int:
    return leaf_count_bound(matrix.cells)


def lower_bound_log_rank(matrix: GameMatrix) -> int:
    if not matrix.is_boolean:
        raise DomainError("The log-rank bound is defined for boolean games")
    return log_rank_bound(matrix.cells)


def _coarse_blocks(rect: _Rectangles, player: str, classes: list[int], rows: int, cols: int) -> list[int]:
    # Splits by the value each class shows on one opposite line, plus the halving split
    reps = [lowest_index(c) for c in classes]
    blocks: dict[int, None] = {}
    opposite = cols if player == "row" else rows
    for line in indices_of(opposite):
        by_value: dict[int, int] = {}
        for cls, rep in zip(classes, reps):
            v = rect.cells[rep][line] if player == "row" else rect.cells[line][rep]
            by_value[v] = by_value.get(v, 0) | cls
        if len(by_value) < 2:
            continue
        for block in by_value.values():
            blocks.setdefault(block, None)
    half = 0
    for cls in classes[: len(classes) // 2]:
        half |= cls
    blocks.setdefault(half, None)
    live = rows if player == "row" else cols
    return [b for b in blocks if b and b != live]


def greedy_upper(matrix: GameMatrix) -> SolveResult:
    """A valid protocol built split by split; its depth bounds the complexity from above.

    Each step takes the split whose worse child has the smallest rank bound,
    breaking ties toward the split whose larger child has fewer cells.
    """
    started = time.perf_counter()
    rect = _Rectangles(matrix)
    counter = {"nodes": 0}

    def build(rows: int, cols: int) -> ProtocolTree:
        value = rect.monochrome_value(rows, cols)
        if value is not None:
            return ProtocolLeaf(value)
        counter["nodes"] += 1
        best = None
        for player in ("row", "col"):
            classes = rect.row_classes(rows, cols) if player == "row" else rect.col_classes(rows, cols)
            if len(classes) < 2:
                continue
            if len(classes) <= GREEDY_FULL_ENUMERATION_CLASSES:
                blocks = list(canonical_blocks(classes))
            else:
                blocks = _coarse_blocks(rect, player, classes, rows, cols)
            live = rows if player == "row" else cols
            other_size = popcount(cols if player == "row" else rows)
            for block in blocks:
                rest = live & ~block
                if player == "row":
                    children = ((block, cols), (rest, cols))
                else:
                    children = ((rows, block), (rows, rest))
                score = (
                    max(rect.bound(*children[0]), rect.bound(*children[1])),
                    max(popcount(block), popcount(rest)) * other_size,
                )
                if best is None or score < best[0]:
                    best = (score, player, block, children)
        _, player, block, children = best
        return ProtocolNode(
            player=player,
            left=tuple(indices_of(block)),
            children=(build(*children[0]), build(*children[1])),
        )

    tree = build(full_mask(matrix.rows), full_mask(matrix.cols))
    depth = protocol_depth(tree)
    stats = SolverStats(nodes=counter["nodes"], seconds=time.perf_counter() - started)
    logger.debug(f"Greedy depth {depth} for a {matrix.rows}x{matrix.cols} game")
    return SolveResult(depth=depth, tree=tree, method="greedy", stats=stats)
