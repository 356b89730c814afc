# Game matrices, transposition, the padded family and alternating game dimensions
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from ccgame.config import resolve_max_cells
from ccgame.constants import PADDED_FAMILY_ALPHABET, PHI_BASE
from ccgame.exceptions import DomainError, ShapeError, SizeGuardError

logger = logging.getLogger(__name__)


def check_cell_guard(rows: int, cols: int, what: str, max_cells: int | None = None, details: Any = None) -> None:
    # Refuse to materialize rows x cols cells above the configured guard
    limit = resolve_max_cells(max_cells)
    requested = rows * cols
    if requested > limit:
        raise SizeGuardError(
            f"{what} needs {rows}x{cols} = {requested} cells, above the guard of {limit}",
            requested=requested,
            limit=limit,
            details=details,
        )


@dataclass(frozen=True, eq=False)
class GameMatrix:
    """A total function f: [m] x [n] -> [alphabet_size] held as a read-only grid.

    Boolean games additionally expose bit-packed rows, which is the form the
    rectangle searches work on.
    """

    cells: np.ndarray
    alphabet_size: int

    @property
    def rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self.cells.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols

    @property
    def is_boolean(self) -> bool:
        return self.alphabet_size <= 2

    def value(self, x: int, y: int) -> int:
        return int(self.cells[x, y])

    def to_lists(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.cells]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GameMatrix":
        # Rows and columns keep the order given
        if len(rows) == 0 or len(cols) == 0:
            raise DomainError("Submatrix needs at least one row and one column")
        for i in rows:
            if not 0 <= i < self.rows:
                raise DomainError(f"Row index {i} outside [0, {self.rows})")
        for j in cols:
            if not 0 <= j < self.cols:
                raise DomainError(f"Column index {j} outside [0, {self.cols})")
        block = self.cells[np.ix_(list(rows), list(cols))]
        return wrap_cells(block, self.alphabet_size)

    @cached_property
    def packed_rows(self) -> tuple[int, ...]:
        # Row i as an int whose bit j is cell (i, j); boolean games only
        if not self.is_boolean:
            raise DomainError("Bit-packed rows exist only for boolean games")
        weights = [1 << j for j in range(self.cols)]
        return tuple(sum(w for w, v in zip(weights, row) if v) for row in self.to_lists())

    @cached_property
    def row_value_masks(self) -> tuple[dict[int, int], ...]:
        # For each row, value -> bitmask of the columns holding it
        masks = []
        for row in self.to_lists():
            by_value: dict[int, int] = {}
            for j, v in enumerate(row):
                by_value[v] = by_value.get(v, 0) | (1 << j)
            masks.append(by_value)
        return tuple(masks)

    @cached_property
    def col_value_masks(self) -> tuple[dict[int, int], ...]:
        masks = []
        for col in self.cells.T.tolist():
            by_value: dict[int, int] = {}
            for i, v in enumerate(col):
                by_value[v] = by_value.get(v, 0) | (1 << i)
            masks.append(by_value)
        return tuple(masks)

    @cached_property
    def _key(self) -> tuple:
        return (self.rows, self.cols, self.alphabet_size, self.cells.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameMatrix):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GameMatrix({self.rows}x{self.cols}, alphabet={self.alphabet_size}, cells={self.to_lists()})"


def wrap_cells(cells: np.ndarray, alphabet_size: int) -> GameMatrix:
    data = np.ascontiguousarray(cells, dtype=np.int64)
    data.setflags(write=False)
    return GameMatrix(cells=data, alphabet_size=alphabet_size)


def new_matrix(cells: Sequence[Sequence[int]] | np.ndarray, alphabet_size: int = 2) -> GameMatrix:
    # Validate a value grid and freeze it into a game matrix
    if alphabet_size < 1:
        raise DomainError(f"Alphabet size must be >= 1, got {alphabet_size}")
    if isinstance(cells, np.ndarray):
        if cells.ndim != 2:
            raise ShapeError(f"Expected a 2-d grid, got {cells.ndim} dimensions")
        grid = cells
    else:
        rows = [list(row) for row in cells]
        if not rows:
            raise ShapeError("Matrix has no rows")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ShapeError(f"Ragged matrix: row lengths {[len(row) for row in rows]}")
        grid = np.array(rows) if width else np.zeros((len(rows), 0), dtype=np.int64)
    if grid.shape[0] == 0 or grid.shape[1] == 0:
        raise ShapeError(f"Matrix must be non-empty, got shape {tuple(grid.shape)}")
    if grid.dtype == np.bool_:
        grid = grid.astype(np.int64)
    elif not np.issubdtype(grid.dtype, np.integer):
        if not np.issubdtype(grid.dtype, np.number) or not np.all(np.mod(grid, 1) == 0):
            raise DomainError("Matrix values must be integers")
        grid = grid.astype(np.int64)
    if grid.min() < 0 or grid.max() >= alphabet_size:
        raise DomainError(f"Matrix values must lie in [0, {alphabet_size}), got range [{grid.min()}, {grid.max()}]")
    return wrap_cells(grid, alphabet_size)


def transpose(matrix: GameMatrix) -> GameMatrix:
    # Swap the roles of the two players
    return wrap_cells(matrix.cells.T, matrix.alphabet_size)


def phi_base() -> GameMatrix:
    return new_matrix(PHI_BASE, alphabet_size=2)


@dataclass(frozen=True)
class PhiDims:
    B: int
    generation: int
    rows: int
    cols: int

    @property
    def cells(self) -> int:
        return self.rows * self.cols


def phi_dimensions(B: int, generation: int) -> PhiDims:
    # Closed forms of rows and columns of the alternating game phi_i^B
    if B < 2:
        raise DomainError(f"Interlace width B must be >= 2, got {B}")
    if generation < 0:
        raise DomainError(f"Generation must be >= 0, got {generation}")
    if generation % 2 == 0:
        j = generation // 2
        rows = B ** ((B ** (j + 1) - B) // (B - 1))
        cols = 2 ** (B**j) * B ** ((B**j - 1) // (B - 1))
    else:
        j = (generation - 1) // 2
        rows = 2 ** (B ** (j + 1)) * B ** ((B ** (j + 1) - B) // (B - 1))
        cols = B ** ((B ** (j + 1) - 1) // (B - 1))
    return PhiDims(B=B, generation=generation, rows=rows, cols=cols)


def phi_recurrence_fits(B: int, generation: int, max_cells: int) -> bool:
    # Walk rows' = cols^B, cols' = rows * B, stopping once the guard is passed
    rows, cols = 1, 2
    if rows * cols > max_cells:
        return False
    for _ in range(generation):
        # the interlaced intermediate has the same cell count as the next game
        if cols > max_cells:
            return False
        rows, cols = cols**B, rows * B
        if rows * cols > max_cells:
            return False
    return True


def pad_to_family(matrix: GameMatrix, n: int, max_cells: int | None = None) -> GameMatrix:
    # Embed a boolean game into the top-left of a 2^n x 2^n zero matrix
    # The game stays a subgame of its pad, so the cost never drops; the zero fill can raise it
    if not matrix.is_boolean:
        raise DomainError("Only boolean games belong to the padded family")
    if n < 0:
        raise DomainError(f"Family parameter n must be >= 0, got {n}")
    side = 2**n
    if matrix.rows > side or matrix.cols > side:
        raise DomainError(f"A {matrix.rows}x{matrix.cols} game does not fit in {side}x{side}")
    check_cell_guard(side, side, f"Padded family member for n={n}", max_cells)
    padded = np.zeros((side, side), dtype=np.int64)
    padded[: matrix.rows, : matrix.cols] = matrix.cells
    return wrap_cells(padded, PADDED_FAMILY_ALPHABET)


def family_generation(B: int, n: int) -> int:
    # Largest generation whose alternating game fits inside 2^n x 2^n
    side = 2**n
    best = None
    misses = 0
    generation = 0
    # every other generation grows in both dimensions, so two misses in a row end the walk
    while misses < 2:
        dims = phi_dimensions(B, generation)
        if dims.rows <= side and dims.cols <= side:
            best = generation
            misses = 0
        else:
            misses += 1
        generation += 1
    if best is None:
        raise DomainError(f"No alternating game of width {B} fits in {side}x{side}")
    return best
