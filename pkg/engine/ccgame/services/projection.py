# Selections, projections and the balancing/splitting constructions on interlaced games
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ccgame.exceptions import DomainError, PreconditionError
from ccgame.models.matrix import GameMatrix
from ccgame.models.selection import Selection, column_digit, is_equipartitioned, row_quota
from ccgame.services.interlace import interlace_power
from ccgame.services.subgame import SubgameWitness, is_subgame, verify_witness

logger = logging.getLogger(__name__)


def extract(matrix: GameMatrix, selection: Selection) -> GameMatrix:
    # Restriction to the selected rows and columns, indices in increasing order
    if selection.is_empty:
        raise DomainError("Extraction needs at least one selected row and column")
    return matrix.submatrix(selection.rows, selection.cols)


def _check_components(components: Sequence[int], p: int) -> tuple[int, ...]:
    chosen = tuple(sorted(set(components)))
    if not chosen:
        raise DomainError("Projection needs at least one component")
    if chosen[0] < 0 or chosen[-1] >= p:
        raise DomainError(f"Components {list(chosen)} outside [0, {p})")
    return chosen


def project_column(c: int, n: int, components: Sequence[int]) -> int:
    # sum_gamma b_{q_gamma} n^gamma
    return sum(column_digit(c, n, q) * n**gamma for gamma, q in enumerate(components))


def q_projection(selection: Selection, components: Sequence[int]) -> Selection:
    """Keep only components Q = {q_0 < ... < q_{l-1}} of a selection.

    Component q_gamma becomes component gamma of a width-l interlacing: row
    m*q_gamma + r maps to m*gamma + r and each column keeps the digits it
    shows to the chosen components.
    """
    Q = _check_components(components, selection.p)
    m, n = selection.m, selection.n
    chosen_rows = set(selection.rows)
    rows = [m * gamma + r for gamma, q in enumerate(Q) for r in range(m) if m * q + r in chosen_rows]
    cols = {project_column(c, n, Q) for c in selection.cols}
    return Selection.of(rows, cols, m=m, n=n, p=len(Q))


@dataclass(frozen=True)
class ProjectionMaps:
    # row and column injections of a projected extraction back into the source one
    row_map: dict[int, int]
    col_map: dict[int, int]


def projection_maps(selection: Selection, components: Sequence[int]) -> ProjectionMaps:
    # Row m*gamma + r goes back to m*q_gamma + r; a projected column to the lowest column projecting onto it
    Q = _check_components(components, selection.p)
    m, n = selection.m, selection.n
    row_map = {}
    for gamma, q in enumerate(Q):
        for r in range(m):
            if m * q + r in selection.rows:
                row_map[m * gamma + r] = m * q + r
    col_map: dict[int, int] = {}
    for c in selection.cols:
        col_map.setdefault(project_column(c, n, Q), c)
    return ProjectionMaps(row_map=row_map, col_map=col_map)


def _witness_between(small: Selection, large: Selection, maps: ProjectionMaps) -> SubgameWitness:
    # Maps expressed in positions of the extracted matrices
    large_row_pos = {i: k for k, i in enumerate(large.rows)}
    large_col_pos = {j: k for k, j in enumerate(large.cols)}
    return SubgameWitness(
        row_map=tuple(large_row_pos[maps.row_map[i]] for i in small.rows),
        col_map=tuple(large_col_pos[maps.col_map[j]] for j in small.cols),
    )


@dataclass(frozen=True)
class ProjectionCheck:
    projected: Selection
    witness: SubgameWitness | None
    # True when the witness came from the projection maps rather than search
    constructive: bool = True

    @property
    def holds(self) -> bool:
        return self.witness is not None


def check_projection_subgame(
    base: GameMatrix,
    selection: Selection,
    components: Sequence[int],
    source: GameMatrix | None = None,
    projected_rows: Sequence[int] | None = None,
) -> ProjectionCheck:
    """Confirm a projected extraction is a subgame of the extraction it came from.

    `source` is the p-fold interlacing of `base` when the caller already has it.
    `projected_rows` restricts the projected rows further (the balancing and
    splitting constructions trim them).
    """
    _check_context(base, selection)
    p = selection.p
    projected = q_projection(selection, components)
    if projected_rows is not None:
        projected = Selection.of(projected_rows, projected.cols, m=projected.m, n=projected.n, p=projected.p)
    if selection.is_empty or projected.is_empty:
        raise DomainError("Projection check needs non-empty selections")
    source = source if source is not None else _interlaced(base, p)
    small = extract(_interlaced(base, projected.p), projected)
    large = extract(source, selection)
    maps = projection_maps(selection, components)
    witness = _witness_between(projected, selection, maps)
    if verify_witness(small, large, witness):
        return ProjectionCheck(projected=projected, witness=witness)
    # the maps should always work; fall back to search so a failure is definitive
    logger.warning(f"Projection maps failed for components {list(components)}; searching")
    found = is_subgame(small, large)
    return ProjectionCheck(projected=projected, witness=found, constructive=False)


@lru_cache(maxsize=64)
def _interlaced(base: GameMatrix, p: int) -> GameMatrix:
    return interlace_power(base, p)


def _check_context(base: GameMatrix, selection: Selection) -> None:
    if (selection.m, selection.n) != base.shape:
        raise DomainError(f"Selection over {selection.m}x{selection.n} does not match a {base.rows}x{base.cols} game")


def balancing_length(selected: int, m: int, p: int, T: Fraction) -> int:
    # ceil(p * (1 - (1 - |R|/(pm)) / (1 - T/m))), simplified to ceil((|R| - pT) / (m - T))
    return math.ceil((Fraction(selected) - p * T) / (m - T))


@dataclass(frozen=True)
class BalanceResult:
    length: int
    components: tuple[int, ...]
    selection: Selection
    # components dropped for having at least m - T unselected rows
    sparse_components: tuple[int, ...] = field(default=())


def balance_selection(base: GameMatrix, selection: Selection, T: Fraction | int) -> BalanceResult:
    """Project an arbitrary selection onto components where it is dense.

    Components with at least m - T unselected rows are set aside; the
    lowest l of the others are kept, then each kept component is trimmed to
    exactly ceil(T) rows, lowest indices first.
    """
    T = Fraction(T)
    m, n, p = selection.m, selection.n, selection.p
    _check_context(base, selection)
    if not 0 <= T < m:
        raise PreconditionError(f"Balancing needs 0 <= T < m, got T={T}, m={m}")
    quota = row_quota(T)
    if quota == 0:
        # a zero quota would leave nothing to extract
        raise PreconditionError("Balancing needs ceil(T) >= 1")
    length = balancing_length(len(selection.rows), m, p, T)
    if length <= 0:
        raise PreconditionError(f"Balancing length {length} is not positive for |R|={len(selection.rows)}")
    counts = selection.component_counts()
    sparse = tuple(gamma for gamma in range(p) if m - counts[gamma] >= m - T)
    dense = [gamma for gamma in range(p) if gamma not in sparse]
    if len(dense) < length:
        raise PreconditionError(f"Only {len(dense)} dense components for length {length}")
    Q = tuple(dense[:length])
    projected = q_projection(selection, Q)
    trimmed = []
    for gamma in range(length):
        trimmed.extend(projected.component_rows(gamma)[:quota])
    result = Selection.of(trimmed, projected.cols, m=m, n=n, p=length)
    logger.debug(f"Balanced |R|={len(selection.rows)} onto components {list(Q)} (l={length})")
    return BalanceResult(length=length, components=Q, selection=result, sparse_components=sparse)


@dataclass(frozen=True)
class SplitPart:
    length: int
    components: tuple[int, ...]
    selection: Selection


def split_projection(
    base: GameMatrix,
    first_rows: Iterable[int],
    second_rows: Iterable[int],
    cols: Iterable[int],
    p: int,
    T: Fraction | int,
) -> tuple[SplitPart, SplitPart]:
    """Split an equipartitioned row set in two and project each half.

    A component goes to the first half when it holds at least T/2 of the
    first half's rows and to the second half otherwise, so the two component
    sets partition [p]. Each half is trimmed to ceil(T/2) rows per component.
    """
    T = Fraction(T)
    m, n = base.rows, base.cols
    R1, R2 = set(first_rows), set(second_rows)
    if R1 & R2:
        raise PreconditionError("Row halves overlap")
    if not is_equipartitioned(R1 | R2, m, T, p):
        raise PreconditionError(f"Rows are not {m},{T},{p}-equipartitioned")
    half_quota = row_quota(T / 2)
    columns = tuple(sorted(set(cols)))
    first_counts = Selection.of(R1, columns, m=m, n=n, p=p).component_counts()
    Q1 = tuple(gamma for gamma in range(p) if first_counts[gamma] >= T / 2)
    Q2 = tuple(gamma for gamma in range(p) if gamma not in Q1)
    if not Q1 or not Q2:
        raise PreconditionError(f"Split leaves an empty component set ({len(Q1)}, {len(Q2)})")
    parts = []
    for rows, Q in ((R1, Q1), (R2, Q2)):
        projected = q_projection(Selection.of(rows, columns, m=m, n=n, p=p), Q)
        trimmed = []
        for gamma in range(len(Q)):
            trimmed.extend(projected.component_rows(gamma)[:half_quota])
        parts.append(SplitPart(length=len(Q), components=Q, selection=Selection.of(trimmed, projected.cols, m=m, n=n, p=len(Q))))
    return parts[0], parts[1]


def projection_windows(p: int, length: int) -> list[tuple[int, ...]]:
    # Cyclic windows {(i*l + j) mod p : j < l}, i < p / gcd(p, l); each component is covered l / gcd(p, l) times
    if not 1 <= length <= p:
        raise DomainError(f"Window length {length} outside [1, {p}]")
    count = p // math.gcd(p, length)
    return [tuple(sorted({(i * length + j) % p for j in range(length)})) for i in range(count)]


@dataclass(frozen=True)
class MaxProjection:
    components: tuple[int, ...]
    selection: Selection
    window_sizes: tuple[int, ...]


def max_projection(base: GameMatrix, selection: Selection, length: int) -> MaxProjection:
    # Projection onto the cyclic window keeping the most columns; |D|^p >= |C|^l
    _check_context(base, selection)
    counts = selection.component_counts()
    if not counts or counts[0] == 0:
        raise DomainError("Max projection needs at least one row per component")
    if len(set(counts)) != 1:
        raise PreconditionError(f"Rows are not equipartitioned: per-component counts {counts}")
    windows = projection_windows(selection.p, length)
    sizes = tuple(len({project_column(c, selection.n, w) for c in selection.cols}) for w in windows)
    best = max(range(len(windows)), key=lambda i: (sizes[i], -i))
    chosen = windows[best]
    return MaxProjection(components=chosen, selection=q_projection(selection, chosen), window_sizes=sizes)


@dataclass(frozen=True)
class ProductCheck:
    holds: bool
    lhs: int
    rhs: int

    @property
    def margin(self) -> int:
        return self.rhs - self.lhs


def product_theorem_check(
    universe: Iterable[int],
    covers: Sequence[Iterable[int]],
    k: int,
    family: Iterable[Iterable[int]],
) -> ProductCheck:
    # |F|^k <= prod |F restricted to A_i| whenever every element lies in at least k covers
    U = set(universe)
    cover_sets = [frozenset(a) for a in covers]
    for u in U:
        hits = sum(1 for a in cover_sets if u in a)
        if hits < k:
            raise PreconditionError(f"Element {u} lies in {hits} covers, fewer than k={k}")
    F = {frozenset(s) for s in family}
    if any(not s <= U for s in F):
        raise DomainError("Family members must be subsets of the universe")
    lhs = len(F) ** k
    rhs = 1
    for a in cover_sets:
        rhs *= len({s & a for s in F})
    return ProductCheck(holds=lhs <= rhs, lhs=lhs, rhs=rhs)


def digit_family(cols: Iterable[int], n: int, p: int) -> list[frozenset[tuple[int, int]]]:
    # Columns as subsets of [n] x [p]: column c is {(b_gamma, gamma)}
    return [frozenset((column_digit(c, n, gamma), gamma) for gamma in range(p)) for c in cols]

