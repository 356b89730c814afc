# Interlacing of games and the alternating family phi_i^B
from __future__ import annotations

import logging

import numpy as np

from ccgame.config import resolve_max_cells
from ccgame.exceptions import DomainError, SizeGuardError
from ccgame.models.matrix import (
    GameMatrix,
    check_cell_guard,
    family_generation,
    pad_to_family,
    phi_base,
    phi_dimensions,
    phi_recurrence_fits,
    transpose,
    wrap_cells,
)
from ccgame.utils.rank import integer_rank

logger = logging.getLogger(__name__)


def interlace_binary(f: GameMatrix, g: GameMatrix, max_cells: int | None = None) -> GameMatrix:
    # Stack f's rows over g's rows; column (y1, y2) with g's index varying fastest
    if f.alphabet_size != g.alphabet_size:
        raise DomainError(f"Alphabets differ: {f.alphabet_size} vs {g.alphabet_size}")
    rows = f.rows + g.rows
    cols = f.cols * g.cols
    check_cell_guard(rows, cols, "Binary interlacing", max_cells)
    y = np.arange(cols)
    top = f.cells[:, y // g.cols]
    bottom = g.cells[:, y % g.cols]
    return wrap_cells(np.vstack([top, bottom]), f.alphabet_size)


def interlace_power(matrix: GameMatrix, p: int, max_cells: int | None = None) -> GameMatrix:
    """The p-fold interlacing of an m x n game.

    Row m*gamma + r, column c holds matrix[r][b_gamma] where b_gamma is digit
    gamma of c in base n, digit 0 least significant.
    """
    if p < 1:
        raise DomainError(f"Interlace power must be >= 1, got {p}")
    m, n = matrix.rows, matrix.cols
    cols = n**p
    check_cell_guard(m * p, cols, f"Interlacing to power {p}", max_cells)
    c = np.arange(cols, dtype=np.int64)
    blocks = [matrix.cells[:, (c // n**gamma) % n] for gamma in range(p)]
    logger.debug(f"Interlaced {m}x{n} game to power {p}: {m * p}x{cols}")
    return wrap_cells(np.vstack(blocks), matrix.alphabet_size)


def display_order(matrix: GameMatrix, n: int, p: int) -> GameMatrix:
    # Reorder columns so digit 0 is the most significant, the layout printed
    # for interlacings in the literature; a column permutation, so a subgame of both
    if matrix.cols != n**p:
        raise DomainError(f"Expected {n}^{p} = {n**p} columns, got {matrix.cols}")
    c = np.arange(matrix.cols, dtype=np.int64)
    reversed_c = np.zeros_like(c)
    for gamma in range(p):
        reversed_c += ((c // n**gamma) % n) * n ** (p - 1 - gamma)
    return wrap_cells(matrix.cells[:, reversed_c], matrix.alphabet_size)


def alternating_game(B: int, generation: int, max_cells: int | None = None) -> GameMatrix:
    # phi_0 = [1 0], phi_{i+1} = transpose of the B-fold interlacing of phi_i
    if B < 1:
        raise DomainError(f"Interlace width B must be >= 1, got {B}")
    if generation < 0:
        raise DomainError(f"Generation must be >= 0, got {generation}")
    limit = resolve_max_cells(max_cells)
    if not phi_recurrence_fits(B, generation, limit):
        dims = phi_dimensions(B, generation) if B >= 2 else None
        raise SizeGuardError(
            f"phi_{generation} of width {B} exceeds the guard of {limit} cells",
            requested=dims.cells if dims else None,
            limit=limit,
            details=dims,
        )
    phi = phi_base()
    for _ in range(generation):
        phi = transpose(interlace_power(phi, B, max_cells=limit))
    logger.debug(f"Built phi_{generation} of width {B}: {phi.rows}x{phi.cols}")
    return phi


def interlace_rank_bound(matrix: GameMatrix, p: int) -> tuple[int, int]:
    # (rank of the p-fold interlacing, p * rank of the game); the first never exceeds the second
    interlaced = interlace_power(matrix, p)
    return integer_rank(interlaced.cells), p * integer_rank(matrix.cells)


def padded_family(B: int, n: int, max_cells: int | None = None) -> GameMatrix:
    # The member of the padded family for n: phi_{i_n} embedded in 2^n x 2^n
    generation = family_generation(B, n)
    return pad_to_family(alternating_game(B, generation, max_cells=max_cells), n, max_cells=max_cells)
