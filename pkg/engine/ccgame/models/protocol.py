# Deterministic protocol trees and their verification against a game
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Sequence, Union

import numpy as np

from ccgame.exceptions import ProtocolStructureError

logger = logging.getLogger(__name__)

Player = Literal["row", "col"]


@dataclass(frozen=True)
class ProtocolLeaf:
    value: int


@dataclass(frozen=True)
class ProtocolNode:
    # `left` lists the live indices of `player` that take children[0]
    player: Player
    left: tuple[int, ...]
    children: tuple["ProtocolTree", "ProtocolTree"]


ProtocolTree = Union[ProtocolLeaf, ProtocolNode]


def protocol_depth(tree: ProtocolTree) -> int:
    # Worst-case number of bits sent
    if isinstance(tree, ProtocolLeaf):
        return 0
    return 1 + max(protocol_depth(tree.children[0]), protocol_depth(tree.children[1]))


def count_leaves(tree: ProtocolTree) -> int:
    if isinstance(tree, ProtocolLeaf):
        return 1
    return count_leaves(tree.children[0]) + count_leaves(tree.children[1])


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    cost: int
    # first input pair the tree answers wrongly, if any
    counterexample: tuple[int, int] | None = None


def protocol_verify(tree: ProtocolTree, matrix) -> VerifyResult:
    """Walk every input pair of `matrix` through `tree`.

    Pairs are walked a live rectangle at a time: each node splits the live
    rows or columns into its `left` block and the rest, and each leaf must
    agree with every cell of the rectangle that reaches it. A block that is
    empty, covers every live index or names a dead index is a structural
    error, not a wrong answer.
    """
    cells = matrix.cells
    all_rows = tuple(range(matrix.rows))
    all_cols = tuple(range(matrix.cols))
    counterexample = _walk(tree, cells, all_rows, all_cols)
    valid = counterexample is None
    cost = protocol_depth(tree)
    if not valid:
        logger.debug(f"Protocol answers wrongly at {counterexample}")
    return VerifyResult(valid=valid, cost=cost, counterexample=counterexample)


def _walk(
    node: ProtocolTree, cells: np.ndarray, rows: Sequence[int], cols: Sequence[int]
) -> tuple[int, int] | None:
    if isinstance(node, ProtocolLeaf):
        block = cells[np.ix_(list(rows), list(cols))]
        wrong = np.argwhere(block != node.value)
        if len(wrong):
            i, j = wrong[0]
            return rows[int(i)], cols[int(j)]
        return None
    if not isinstance(node, ProtocolNode):
        raise ProtocolStructureError(f"Unknown protocol node {node!r}")
    if node.player not in ("row", "col"):
        raise ProtocolStructureError(f"Unknown player {node.player!r}")
    live = rows if node.player == "row" else cols
    block = set(node.left)
    live_set = set(live)
    if not block:
        raise ProtocolStructureError(f"Empty {node.player} block")
    if not block <= live_set:
        raise ProtocolStructureError(f"{node.player} block names dead indices {sorted(block - live_set)}")
    if len(block) == len(live_set):
        raise ProtocolStructureError(f"{node.player} block covers every live index")
    first = tuple(i for i in live if i in block)
    second = tuple(i for i in live if i not in block)
    if node.player == "row":
        return _walk(node.children[0], cells, first, cols) or _walk(node.children[1], cells, second, cols)
    return _walk(node.children[0], cells, rows, first) or _walk(node.children[1], cells, rows, second)
