# Bracket sets <M, p, x, y>: enumeration, counting and set complexity
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from ccgame.config import SolverPolicy, current_config, resolve_policy
from ccgame.exceptions import DomainError, SizeGuardError
from ccgame.models.matrix import GameMatrix
from ccgame.models.selection import Selection
from ccgame.services.interlace import interlace_power
from ccgame.services.projection import extract
from ccgame.services.solver import lower_bound_leafcount, solve_exact

logger = logging.getLogger(__name__)


def ceil_scaled_power(N: int, y: Fraction, exponent: Fraction = Fraction(1)) -> int:
    # Smallest integer t >= N * y^exponent, exact for rational y and exponent
    y, exponent = Fraction(y), Fraction(exponent)
    if not 0 < y <= 1 or not 0 <= exponent <= 1:
        raise DomainError(f"Need 0 < y <= 1 and 0 <= exponent <= 1, got y={y}, exponent={exponent}")
    num, den = exponent.numerator, exponent.denominator
    # t^den * y.den^num >= N^den * y.num^num
    target = N**den * y.numerator**num
    scale = y.denominator**num
    lo, hi = 0, N
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**den * scale >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class BracketSpec:
    """Games extracted from the p-fold interlacing of M with ceil(m*x) rows in
    every component and ceil(n^p * y) columns."""

    matrix: GameMatrix
    p: int
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        if self.p < 1:
            raise DomainError(f"Bracket needs p >= 1, got {self.p}")
        for name, value in (("x", self.x), ("y", self.y)):
            if not 0 < value <= 1:
                raise DomainError(f"Bracket needs 0 < {name} <= 1, got {value}")

    @classmethod
    def of(cls, matrix: GameMatrix, p: int, x, y) -> "BracketSpec":
        return cls(matrix=matrix, p=p, x=Fraction(x), y=Fraction(y))

    @classmethod
    def with_counts(cls, matrix: GameMatrix, p: int, quota: int, width: int) -> "BracketSpec":
        # Exact fractions reproducing a given row quota and column count
        return cls(matrix=matrix, p=p, x=Fraction(quota, matrix.rows), y=Fraction(width, matrix.cols**p))

    @cached_property
    def quota(self) -> int:
        return math.ceil(self.matrix.rows * self.x)

    @cached_property
    def width(self) -> int:
        return math.ceil(self.matrix.cols**self.p * self.y)

    @property
    def label(self) -> str:
        return f"p={self.p},x={self.x},y={self.y}"


def bracket_member_count(spec: BracketSpec) -> int:
    # C(m, ceil(mx))^p * C(n^p, ceil(n^p y))
    m, n, p = spec.matrix.rows, spec.matrix.cols, spec.p
    return math.comb(m, spec.quota) ** p * math.comb(n**p, spec.width)


def iter_bracket_selections(spec: BracketSpec) -> Iterator[Selection]:
    # Lexicographic in (R, C); component 0's rows vary slowest
    m, n, p = spec.matrix.rows, spec.matrix.cols, spec.p
    per_component = [
        [tuple(m * gamma + r for r in combo) for combo in itertools.combinations(range(m), spec.quota)]
        for gamma in range(p)
    ]
    for parts in itertools.product(*per_component):
        rows = tuple(i for part in parts for i in part)
        for cols in itertools.combinations(range(n**p), spec.width):
            yield Selection(rows=rows, cols=cols, m=m, n=n, p=p)


def enumerate_bracket(
    spec: BracketSpec,
    limit: int | None = None,
    max_cells: int | None = None,
    source: GameMatrix | None = None,
) -> Iterator[tuple[Selection, GameMatrix]]:
    """Yield every (selection, member game) of a bracket set.

    Refuses up front when the member count exceeds `limit`. `source` replaces
    the interlacing, e.g. by its display-order column permutation.
    """
    limit = current_config().enumeration_limit if limit is None else limit
    count = bracket_member_count(spec)
    if count > limit:
        raise SizeGuardError(
            f"Bracket {spec.label} has {count} members, above the enumeration limit of {limit}",
            requested=count,
            limit=limit,
        )
    expected = (spec.matrix.rows * spec.p, spec.matrix.cols**spec.p)
    if source is None:
        source = interlace_power(spec.matrix, spec.p, max_cells=max_cells)
    elif source.shape != expected:
        raise DomainError(f"Source of shape {source.shape} does not match {expected}")
    for selection in iter_bracket_selections(spec):
        yield selection, extract(source, selection)


class ComplexityCache:
    # Exact complexity per distinct game, shared across the brackets of one run
    def __init__(self, policy: SolverPolicy | None = None):
        self.policy = resolve_policy(policy)
        self._depths: dict[GameMatrix, int] = {}
        self._bounds: dict[GameMatrix, int] = {}

    def lower_bound(self, game: GameMatrix) -> int:
        if game not in self._bounds:
            self._bounds[game] = lower_bound_leafcount(game)
        return self._bounds[game]

    def depth(self, game: GameMatrix) -> int:
        if game not in self._depths:
            self._depths[game] = solve_exact(game, policy=self.policy).depth
        return self._depths[game]

    def depth_below(self, game: GameMatrix, budget: int) -> int | None:
        # Exact depth when it is at most `budget`, otherwise None
        if game in self._depths:
            d = self._depths[game]
            return d if d <= budget else None
        if self.lower_bound(game) > budget:
            return None
        result = solve_exact(game, depth_budget=budget, policy=self.policy)
        if result.depth is not None:
            self._depths[game] = result.depth
        return result.depth


def bracket_complexity(
    spec: BracketSpec,
    cache: ComplexityCache | None = None,
    limit: int | None = None,
    max_cells: int | None = None,
) -> int:
    """min over members of the exact complexity, by full enumeration.

    A member only matters if it beats the best so far, so each one is solved
    with a budget one below the current minimum and skipped outright when its
    rank bound already rules that out.
    """
    cache = cache or ComplexityCache()
    best: int | None = None
    seen: set[GameMatrix] = set()
    for _, game in enumerate_bracket(spec, limit=limit, max_cells=max_cells):
        if game in seen:
            continue
        seen.add(game)
        if best is None:
            best = cache.depth(game)
        else:
            improved = cache.depth_below(game, best - 1)
            if improved is not None:
                best = improved
        if best == 0:
            break
    logger.debug(f"Bracket {spec.label} over a {spec.matrix.rows}x{spec.matrix.cols} game: D = {best}")
    return best
