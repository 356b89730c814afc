# Grid runners that check the bracket lemmas and the constructive projection lemmas
from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator

import numpy as np

from ccgame.config import RunConfig, current_config
from ccgame.constants import PROJECTION_COLUMN_SAMPLE, RANDOM_SUITE_SIZE
from ccgame.exceptions import PreconditionError, UsageError
from ccgame.models.documents import LemmaReport, Violation
from ccgame.models.matrix import GameMatrix, new_matrix, phi_base, transpose
from ccgame.models.selection import Selection
from ccgame.services.brackets import (
    BracketSpec,
    ComplexityCache,
    bracket_complexity,
    bracket_member_count,
    ceil_scaled_power,
    enumerate_bracket,
)
from ccgame.services.directsum import one_round_upper_instance, transpose_ds_instance
from ccgame.services.interlace import alternating_game, interlace_power, interlace_rank_bound
from ccgame.services.projection import (
    balance_selection,
    check_projection_subgame,
    digit_family,
    max_projection,
    product_theorem_check,
    project_column,
    projection_windows,
    split_projection,
)
from ccgame.services.solver import lower_bound_log_rank
from ccgame.services.subgame import set_is_subgame
from ccgame.utils.bitmasks import indices_of
from ccgame.utils.rank import ceil_log2

logger = logging.getLogger(__name__)

PRESETS = ("tiny", "small")

# Fractions used across grids
_HALF = Fraction(1, 2)
_Y_QUARTERS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@lru_cache(maxsize=None)
def named_game(name: str) -> GameMatrix:
    # The small games every grid draws from
    if name == "phi0":
        return phi_base()
    if name == "I2":
        return new_matrix([[1, 0], [0, 1]])
    if name == "L2":
        return new_matrix([[1, 0], [1, 1]])
    if name == "phi1":
        return alternating_game(2, 1)
    if name == "interlace2_phi0":
        return interlace_power(phi_base(), 2)
    raise UsageError(f"Unknown game {name!r}")


def _fmt(value: Any) -> str:
    return str(value)


def rank_claim_bound(p: int, y: Fraction) -> int:
    # ceil(log2(p + log2 y)) clamped at 0: the smallest b >= 0 with y <= 2^(2^b - p)
    y = Fraction(y)
    b = 0
    while y > Fraction(2) ** (2**b - p):
        b += 1
    return b


@dataclass
class _Run:
    preset: str
    seed: int
    rng: np.random.Generator
    cache: ComplexityCache
    limit: int
    max_cells: int
    instances: int = 0
    vacuous: int = 0
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    _brackets: dict[tuple, int] = field(default_factory=dict)

    @property
    def small(self) -> bool:
        return self.preset == "small"

    def record(self, instance: str, holds: bool, lhs: Any, rhs: Any) -> None:
        self.instances += 1
        if not holds:
            logger.warning(f"Violation at {instance}: lhs={lhs}, rhs={rhs}")
            self.violations.append(Violation(instance=instance, lhs=_jsonable(lhs), rhs=_jsonable(rhs)))

    def skip(self, instance: str) -> None:
        # hypothesis does not hold; neither a pass nor a violation
        self.instances += 1
        self.vacuous += 1
        logger.debug(f"Vacuous instance {instance}")

    def members(self, spec: BracketSpec) -> Iterator[tuple[Selection, GameMatrix]]:
        return enumerate_bracket(spec, limit=self.limit, max_cells=self.max_cells)

    def complexity(self, spec: BracketSpec) -> int:
        return bracket_complexity(spec, cache=self.cache, limit=self.limit, max_cells=self.max_cells)

    def bracket_counts(self, name: str, p: int, quota: int, width: int) -> int:
        # D of the bracket given by exact counts; zero components make a trivial game
        if p == 0:
            return 0
        key = (name, p, quota, width)
        if key not in self._brackets:
            spec = BracketSpec.with_counts(named_game(name), p, quota, width)
            self._brackets[key] = self.complexity(spec)
        return self._brackets[key]

    def bracket(self, name: str, p: int, x: Fraction, y: Fraction) -> int:
        spec = BracketSpec.of(named_game(name), p, x, y)
        return self.bracket_counts(name, p, spec.quota, spec.width)


def _jsonable(value: Any) -> int | float | str | None:
    if value is None or isinstance(value, (int, float, str)):
        return value
    return str(value)


def _column_sets(run: _Run, width: int) -> Iterator[tuple[int, ...]]:
    # Every non-empty column set of [width], or a seeded sample when there are too many
    total = 2**width - 1
    if total <= PROJECTION_COLUMN_SAMPLE:
        for mask in range(1, total + 1):
            yield tuple(indices_of(mask))
        return
    for mask in run.rng.integers(1, total + 1, size=PROJECTION_COLUMN_SAMPLE):
        yield tuple(indices_of(int(mask)))


def _subsets(items: range | list[int], non_empty: bool = True) -> Iterator[tuple[int, ...]]:
    items = list(items)
    for size in range(1 if non_empty else 0, len(items) + 1):
        yield from itertools.combinations(items, size)


def _equipartitioned_rows(m: int, p: int, quota: int) -> Iterator[tuple[int, ...]]:
    per_component = [
        [tuple(m * gamma + r for r in combo) for combo in itertools.combinations(range(m), quota)]
        for gamma in range(p)
    ]
    for parts in itertools.product(*per_component):
        yield tuple(i for part in parts for i in part)


def _random_game(run: _Run, max_rows: int = 2, max_cols: int = 2) -> GameMatrix:
    m = int(run.rng.integers(1, max_rows + 1))
    n = int(run.rng.integers(2, max_cols + 1))
    return new_matrix(run.rng.integers(0, 2, size=(m, n)))


def _random_subset(run: _Run, size: int, non_empty: bool = True) -> tuple[int, ...]:
    while True:
        chosen = tuple(int(i) for i in np.flatnonzero(run.rng.integers(0, 2, size=size)))
        if chosen or not non_empty:
            return chosen


_LEMMAS: dict[str, Callable[[_Run], dict[str, Any]]] = {}


def _lemma(lemma_id: str) -> Callable:
    def register(fn: Callable[[_Run], dict[str, Any]]) -> Callable[[_Run], dict[str, Any]]:
        _LEMMAS[lemma_id] = fn
        return fn

    return register


def lemma_ids() -> list[str]:
    return sorted(_LEMMAS)


# ============================================================================
# BRACKET LEMMAS
# ============================================================================


@_lemma("monotonicity")
def _monotonicity(run: _Run) -> dict[str, Any]:
    configs = [("phi0", (1, 2), (Fraction(1),), _Y_QUARTERS)]
    if run.small:
        configs = [
            ("phi0", (1, 2, 3), (Fraction(1),), _Y_QUARTERS),
            ("I2", (1, 2), (_HALF, Fraction(1)), (_HALF, Fraction(1))),
        ]
    for name, ps, xs, ys in configs:
        points = [(p, x, y) for p in ps for x in xs for y in ys]
        values = {pt: run.bracket(name, *pt) for pt in points}
        for low, high in itertools.permutations(points, 2):
            if all(a <= b for a, b in zip(low, high)):
                instance = f"{name}:<{low[0]},{low[1]},{low[2]}> vs <{high[0]},{high[1]},{high[2]}>"
                run.record(instance, values[low] <= values[high], values[low], values[high])
    return {"games": [c[0] for c in configs], "p": [list(c[1]) for c in configs], "x": [[_fmt(v) for v in c[2]] for c in configs], "y": [[_fmt(v) for v in c[3]] for c in configs]}


@_lemma("subprotocol-bounds")
def _subprotocol_bounds(run: _Run) -> dict[str, Any]:
    configs = [("phi0", (1, 2), (Fraction(1),), _Y_QUARTERS)]
    bits = (0, 1, 2)
    if run.small:
        eighths = tuple(Fraction(k, 8) for k in (1, 2, 3, 4, 6, 8))
        configs = [
            ("phi0", (1, 2, 3), (Fraction(1),), eighths),
            ("phi1", (1,), _Y_QUARTERS, (_HALF, Fraction(1))),
        ]
    for name, ps, xs, ys in configs:
        for p, x, y in itertools.product(ps, xs, ys):
            base = run.bracket(name, p, x, y)
            for row_bits, col_bits in itertools.product(bits, bits):
                if row_bits == col_bits == 0:
                    continue
                x2 = min(Fraction(1), x * 2**row_bits)
                y2 = min(Fraction(1), y * 2**col_bits)
                enlarged = run.bracket(name, p, x2, y2)
                instance = f"{name}:<{p},{x},{y}> +{row_bits} row bits +{col_bits} col bits"
                run.record(instance, row_bits + col_bits + base >= enlarged, row_bits + col_bits + base, enlarged)
    return {"games": [c[0] for c in configs], "bits": list(bits)}


@_lemma("extended-product")
def _extended_product(run: _Run) -> dict[str, Any]:
    configs = [("phi0", 2, Fraction(1), (_HALF, Fraction(1)))]
    if run.small:
        configs = [
            ("phi0", 2, Fraction(1), (_HALF, Fraction(3, 4), Fraction(1))),
            ("phi0", 3, Fraction(1), (_HALF, Fraction(3, 4), Fraction(1))),
            ("I2", 2, Fraction(1), (_HALF, Fraction(1))),
        ]
    for name, p, x, ys in configs:
        base = named_game(name)
        m = base.rows
        for y in ys:
            spec = BracketSpec.of(base, p, x, y)
            T = spec.quota
            for selection, _ in run.members(spec):
                rows = selection.rows
                for first in _subsets(rows):
                    if len(first) == len(rows):
                        continue
                    second = tuple(i for i in rows if i not in first)
                    instance = f"{name}:p={p},R1={list(first)},R2={list(second)},C={list(selection.cols)}"
                    try:
                        part1, part2 = split_projection(base, first, second, selection.cols, p, T)
                    except PreconditionError:
                        run.skip(instance)
                        continue
                    sizes = len(part1.selection.cols) * len(part2.selection.cols)
                    holds = (
                        part1.length + part2.length == p
                        and part1.selection.is_equipartitioned(Fraction(T, 2))
                        and part2.selection.is_equipartitioned(Fraction(T, 2))
                        and sizes >= len(selection.cols)
                    )
                    for half, part in ((first, part1), (second, part2)):
                        source = Selection.of(half, selection.cols, m=m, n=base.cols, p=p)
                        check = check_projection_subgame(base, source, part.components, projected_rows=part.selection.rows)
                        holds = holds and check.holds
                    run.record(instance, holds, sizes, len(selection.cols))
    return {"games": sorted({c[0] for c in configs}), "p": sorted({c[1] for c in configs})}


@_lemma("extended-max")
def _extended_max(run: _Run) -> dict[str, Any]:
    configs = [("phi0", 2, Fraction(1), (_HALF, Fraction(3, 4), Fraction(1)))]
    if run.small:
        configs = [
            ("phi0", 2, Fraction(1), (_HALF, Fraction(3, 4), Fraction(1))),
            ("phi0", 3, Fraction(1), (_HALF, Fraction(3, 4), Fraction(1))),
            ("I2", 2, _HALF, (_HALF, Fraction(1))),
        ]
    for name, p, x, ys in configs:
        base = named_game(name)
        for y in ys:
            spec = BracketSpec.of(base, p, x, y)
            for length in range(1, p + 1):
                for selection, _ in run.members(spec):
                    instance = f"{name}:p={p},l={length},R={list(selection.rows)},C={list(selection.cols)}"
                    result = max_projection(base, selection, length)
                    kept = len(result.selection.cols)
                    check = check_projection_subgame(base, selection, result.components)
                    holds = (
                        result.selection.is_equipartitioned(spec.quota)
                        and kept**p >= len(selection.cols) ** length
                        and result.components in projection_windows(p, length)
                        and check.holds
                    )
                    run.record(instance, holds, f"{kept}^{p}", f"{len(selection.cols)}^{length}")
                # the set-level inequality the memberships imply
                width = ceil_scaled_power(base.cols**length, y, Fraction(length, p))
                lhs = run.bracket(name, p, x, y)
                rhs = run.bracket_counts(name, length, spec.quota, width)
                run.record(f"{name}:<{p},{x},{y}> >= <{length},{x},y^({length}/{p})>", lhs >= rhs, lhs, rhs)
    return {"games": sorted({c[0] for c in configs}), "p": sorted({c[1] for c in configs})}


@_lemma("extended-balancing")
def _extended_balancing(run: _Run) -> dict[str, Any]:
    # m*x must be integral here; a rounded-up T can shrink the balanced length below the stated one
    configs = [("I2", 1, _HALF, (Fraction(2),), (Fraction(1),))]
    if run.small:
        configs = [
            ("I2", 1, _HALF, (Fraction(3, 2), Fraction(2)), (_HALF, Fraction(1))),
            ("I2", 2, _HALF, (Fraction(3, 2), Fraction(2)), (_HALF, Fraction(1))),
            ("L2", 2, _HALF, (Fraction(2),), (_HALF, Fraction(1))),
        ]
    for name, p, x, alphas, ys in configs:
        base = named_game(name)
        m, n = base.shape
        T = math.ceil(m * x)
        interlaced = interlace_power(base, p, max_cells=run.max_cells)
        for alpha, y in itertools.product(alphas, ys):
            stated = math.ceil(p * (alpha - 1) * x / (1 - x))
            label = f"{name}:p={p},alpha={alpha},y={y}"
            if stated < 1:
                run.skip(label)
                continue
            outer = BracketSpec.of(interlaced, 1, alpha * x, y)
            for flat, _ in run.members(outer):
                selection = Selection(rows=flat.rows, cols=flat.cols, m=m, n=n, p=p)
                instance = f"{label},R={list(flat.rows)},C={list(flat.cols)}"
                try:
                    result = balance_selection(base, selection, T)
                except PreconditionError:
                    run.skip(instance)
                    continue
                check = check_projection_subgame(base, selection, result.components, projected_rows=result.selection.rows)
                kept = len(result.selection.cols)
                holds = (
                    result.selection.is_equipartitioned(T)
                    and kept * n ** (p - result.length) >= len(flat.cols)
                    and result.length >= stated
                    and check.holds
                )
                run.record(instance, holds, result.length, stated)
            lhs = run.complexity(outer)
            rhs = run.bracket(name, stated, x, y)
            run.record(f"{label}: <interlaced,1,alpha*x,y> >= <{name},{stated},x,y>", lhs >= rhs, lhs, rhs)
    return {"games": sorted({c[0] for c in configs}), "x": _fmt(_HALF)}


@_lemma("transpose-bracket")
def _transpose_bracket(run: _Run) -> dict[str, Any]:
    names = ["interlace2_phi0", "I2"]
    if run.small:
        names += ["phi1", "L2"]
    fractions = (_HALF, Fraction(1))
    for name in names:
        game = named_game(name)
        flipped = transpose(game)
        for x, y in itertools.product(fractions, fractions):
            lhs = run.complexity(BracketSpec.of(game, 1, x, y))
            rhs = run.complexity(BracketSpec.of(flipped, 1, y, x))
            run.record(f"{name}:x={x},y={y}", lhs == rhs, lhs, rhs)
    return {"games": names, "x": [_fmt(v) for v in fractions], "y": [_fmt(v) for v in fractions]}


def _row_first_min(run: _Run, name: str, p: int, delta: int, x: Fraction, y: Fraction, ells: range) -> int | None:
    # min over l and the column share of max(D<p+l+delta, x, y^a>, D<p-l, x, y^(1-a)>)
    base = named_game(name)
    m, n = base.shape
    quota = math.ceil(m * x)
    best = None
    for ell in ells:
        first, second = p + ell + delta, p - ell
        n1, n2 = n**first, n**second
        for w1 in range(ceil_scaled_power(n1, y), n1 + 1):
            # the smallest partner width with w1 * w2 >= n1 * n2 * y
            w2 = math.ceil(Fraction(n1 * n2) * y / w1)
            value = max(run.bracket_counts(name, first, quota, w1), run.bracket_counts(name, second, quota, w2))
            best = value if best is None else min(best, value)
    return best


@_lemma("old-partition")
def _old_partition(run: _Run) -> dict[str, Any]:
    name, p, x = "phi0", 1, _HALF
    ys = (_HALF, Fraction(1))
    if run.small:
        ys = _Y_QUARTERS
    base = named_game(name)
    m, n = base.shape
    narrow_failures = 0
    for delta, y in itertools.product((0, 1), ys):
        total = 2 * p + delta
        instance = f"{name}:p={p},delta={delta},y={y}"
        lhs = run.bracket(name, total, 2 * x, y)
        if lhs < 1:
            run.skip(instance)
            continue
        column = run.bracket_counts(name, total, math.ceil(m * 2 * x), math.ceil(Fraction(n**total) * y / 2))
        wide = 1 + min(_row_first_min(run, name, p, delta, x, y, range(0, p + 1)), column)
        run.record(instance, lhs >= wide, lhs, wide)
        narrow_row = _row_first_min(run, name, p, delta, x, y, range(0, p))
        narrow = 1 + (column if narrow_row is None else min(narrow_row, column))
        if lhs < narrow:
            narrow_failures += 1
    run.notes.append(
        f"l ranges over [p+1]; the narrower reading l in [p] fails on {narrow_failures} instance(s)"
    )
    return {"game": name, "p": p, "x": _fmt(x), "delta": [0, 1], "y": [_fmt(v) for v in ys]}


@_lemma("partition")
def _partition(run: _Run) -> dict[str, Any]:
    name, x = "phi0", _HALF
    taus = (Fraction(0), _HALF, Fraction(1))
    cases = [(2, 0, Fraction(1))]
    if run.small:
        cases = [(1, 0, Fraction(1)), (1, 1, Fraction(1))]
        cases += [(2, 0, y) for y in (_HALF, Fraction(3, 4), Fraction(1))]
    base = named_game(name)
    n = base.cols
    for p, delta, y in cases:
        label = f"{name}:p={p},delta={delta},y={y}"
        premise = run.bracket(name, 2 * p, 2 * x, y / 4)
        lhs = run.bracket(name, 2 * p + delta, 2 * x, y)
        if premise < 1 or lhs < 1:
            run.skip(f"{label}:split-count")
        else:
            rhs = 1 + run.bracket(name, p + delta, x, y)
            run.record(f"{label}:split-count", lhs >= rhs, lhs, rhs)
        if delta != 0:
            continue
        for tau in taus:
            instance = f"{label}:tau={tau}"
            if premise < 1 or lhs < 1:
                run.skip(instance)
                continue
            quota = math.ceil(base.rows * x)
            first = run.bracket_counts(name, p, quota, ceil_scaled_power(n**p, y, 1 / (1 + tau)))
            comps = math.ceil(p * (1 - tau) + 1)
            second = run.bracket_counts(name, comps, quota, ceil_scaled_power(n**comps, y, tau / (1 + tau)))
            rhs = 1 + min(first, second)
            run.record(instance, lhs >= rhs, lhs, rhs)
    run.notes.append("2p + delta components above the solver policy are left out of the grid")
    return {"game": name, "x": _fmt(x), "cases": [[p, d, _fmt(y)] for p, d, y in cases], "tau": [_fmt(t) for t in taus]}


@_lemma("rank-claim")
def _rank_claim(run: _Run) -> dict[str, Any]:
    cases = [(2, y) for y in (_HALF, Fraction(3, 4), Fraction(1))]
    if run.small:
        cases += [(3, y) for y in (_HALF, Fraction(3, 4), Fraction(1))] + [(4, Fraction(1))]
    for p, y in cases:
        lhs = run.bracket("phi0", p, Fraction(1), y)
        rhs = rank_claim_bound(p, y)
        run.record(f"phi0:p={p},y={y}", lhs >= rhs, lhs, rhs)
    return {"game": "phi0", "x": "1", "cases": [[p, _fmt(y)] for p, y in cases]}


@_lemma("subgame-easier")
def _subgame_easier(run: _Run) -> dict[str, Any]:
    trials = 200 if run.small else 20
    for t in range(trials):
        larger = [_random_game(run, 4, 4) for _ in range(int(run.rng.integers(1, 4)))]
        smaller = []
        for game in larger:
            rows = _random_subset(run, game.rows)
            cols = _random_subset(run, game.cols)
            smaller.append(game.submatrix(rows, cols))
        lhs = min(run.cache.depth(g) for g in smaller)
        rhs = min(run.cache.depth(g) for g in larger)
        contained = set_is_subgame(smaller, larger)
        run.record(f"trial={t}", contained and lhs <= rhs, lhs, rhs)
    return {"trials": trials, "max_side": 4}


# ============================================================================
# CONSTRUCTIVE PROJECTION LEMMAS
# ============================================================================


@_lemma("projection")
def _projection(run: _Run) -> dict[str, Any]:
    configs = [("phi0", (1, 2))]
    if run.small:
        configs = [("phi0", (1, 2, 3)), ("I2", (1, 2, 3))]
    for name, ps in configs:
        base = named_game(name)
        m, n = base.shape
        for p in ps:
            source = interlace_power(base, p, max_cells=run.max_cells)
            for rows in _subsets(range(m * p)):
                for cols in _column_sets(run, n**p):
                    selection = Selection(rows=rows, cols=cols, m=m, n=n, p=p)
                    for Q in _subsets(range(p)):
                        instance = f"{name}:p={p},R={list(rows)},C={list(cols)},Q={list(Q)}"
                        if not any(i // m in Q for i in rows):
                            run.skip(instance)
                            continue
                        check = check_projection_subgame(base, selection, Q, source=source)
                        run.record(instance, check.holds, "subgame", "none found")
    return {"games": [c[0] for c in configs], "p": [list(c[1]) for c in configs]}


def _balance_instance(run: _Run, base: GameMatrix, name: str, selection: Selection, T: Fraction) -> None:
    instance = f"{name}:p={selection.p},T={T},R={list(selection.rows)},C={list(selection.cols)}"
    try:
        result = balance_selection(base, selection, T)
    except PreconditionError:
        run.skip(instance)
        return
    n = base.cols
    kept = len(result.selection.cols)
    check = check_projection_subgame(base, selection, result.components, projected_rows=result.selection.rows)
    holds = (
        result.selection.is_equipartitioned(T)
        and kept * n ** (selection.p - result.length) >= len(selection.cols)
        and result.length <= selection.p - len(result.sparse_components)
        and check.holds
    )
    run.record(instance, holds, kept * n ** (selection.p - result.length), len(selection.cols))


def _allowed_T(m: int) -> list[Fraction]:
    return [Fraction(k, 2) for k in range(1, 2 * m) if Fraction(k, 2) < m]


@_lemma("balancing")
def _balancing(run: _Run) -> dict[str, Any]:
    configs = [("I2", (1, 2))]
    random_trials = 50
    if run.small:
        configs = [("phi0", (1, 2, 3)), ("I2", (1, 2, 3)), ("L2", (1, 2))]
        random_trials = RANDOM_SUITE_SIZE
    for name, ps in configs:
        base = named_game(name)
        m, n = base.shape
        for p in ps:
            for rows in _subsets(range(m * p), non_empty=False):
                for cols in _column_sets(run, n**p):
                    selection = Selection(rows=rows, cols=cols, m=m, n=n, p=p)
                    for T in _allowed_T(m):
                        _balance_instance(run, base, name, selection, T)
    for t in range(random_trials):
        base = _random_game(run, 2, 3)
        m, n = base.shape
        p = int(run.rng.integers(1, 4))
        allowed = _allowed_T(m)
        T = allowed[int(run.rng.integers(0, len(allowed)))]
        selection = Selection.of(
            _random_subset(run, m * p, non_empty=False), _random_subset(run, n**p), m=m, n=n, p=p
        )
        _balance_instance(run, base, f"random{t}", selection, T)
    return {"games": [c[0] for c in configs], "p": [list(c[1]) for c in configs], "random": random_trials}


def _split_instance(
    run: _Run, base: GameMatrix, name: str, first: tuple[int, ...], second: tuple[int, ...], cols: tuple[int, ...], p: int, T: int
) -> None:
    m, n = base.shape
    instance = f"{name}:p={p},T={T},R1={list(first)},R2={list(second)},C={list(cols)}"
    try:
        part1, part2 = split_projection(base, first, second, cols, p, T)
    except PreconditionError:
        run.skip(instance)
        return
    sizes = len(part1.selection.cols) * len(part2.selection.cols)
    holds = (
        part1.length + part2.length == p
        and part1.selection.is_equipartitioned(Fraction(T, 2))
        and part2.selection.is_equipartitioned(Fraction(T, 2))
        and sizes >= len(cols)
    )
    for half, part in ((first, part1), (second, part2)):
        source = Selection.of(half, cols, m=m, n=n, p=p)
        holds = holds and check_projection_subgame(base, source, part.components, projected_rows=part.selection.rows).holds
    run.record(instance, holds, sizes, len(cols))


@_lemma("product-of-projections")
def _product_of_projections(run: _Run) -> dict[str, Any]:
    configs = [("phi0", (2,))]
    random_trials = 50
    if run.small:
        configs = [("phi0", (2, 3)), ("I2", (2, 3)), ("L2", (2,))]
        random_trials = RANDOM_SUITE_SIZE
    for name, ps in configs:
        base = named_game(name)
        m, n = base.shape
        for p in ps:
            for T in range(1, m + 1):
                for rows in _equipartitioned_rows(m, p, T):
                    for first in _subsets(rows):
                        if len(first) == len(rows):
                            continue
                        second = tuple(i for i in rows if i not in first)
                        for cols in _column_sets(run, n**p):
                            _split_instance(run, base, name, first, second, cols, p, T)
    for t in range(random_trials):
        base = _random_game(run, 2, 2)
        m, n = base.shape
        p = int(run.rng.integers(2, 4))
        T = int(run.rng.integers(1, m + 1))
        rows = list(_equipartitioned_rows(m, p, T))
        chosen = rows[int(run.rng.integers(0, len(rows)))]
        if len(chosen) < 2:
            run.skip(f"random{t}")
            continue
        mask = run.rng.integers(0, 2, size=len(chosen))
        mask[0], mask[-1] = 1, 0
        first = tuple(i for i, bit in zip(chosen, mask) if bit)
        second = tuple(i for i, bit in zip(chosen, mask) if not bit)
        _split_instance(run, base, f"random{t}", first, second, _random_subset(run, n**p), p, T)
    return {"games": [c[0] for c in configs], "p": [list(c[1]) for c in configs], "random": random_trials}


def _max_instance(run: _Run, base: GameMatrix, name: str, selection: Selection, length: int) -> None:
    instance = f"{name}:p={selection.p},l={length},R={list(selection.rows)},C={list(selection.cols)}"
    result = max_projection(base, selection, length)
    kept = len(result.selection.cols)
    quota = len(selection.component_rows(0))
    holds = (
        result.selection.is_equipartitioned(quota)
        and kept**selection.p >= len(selection.cols) ** length
        and check_projection_subgame(base, selection, result.components).holds
    )
    run.record(instance, holds, f"{kept}^{selection.p}", f"{len(selection.cols)}^{length}")


@_lemma("max-projection")
def _max_projection(run: _Run) -> dict[str, Any]:
    configs = [("phi0", (1, 2))]
    random_trials = 50
    if run.small:
        configs = [("phi0", (1, 2, 3)), ("I2", (1, 2, 3)), ("L2", (1, 2))]
        random_trials = RANDOM_SUITE_SIZE
    for name, ps in configs:
        base = named_game(name)
        m, n = base.shape
        for p in ps:
            for T in range(1, m + 1):
                for rows in _equipartitioned_rows(m, p, T):
                    for cols in _column_sets(run, n**p):
                        selection = Selection(rows=rows, cols=cols, m=m, n=n, p=p)
                        for length in range(1, p + 1):
                            _max_instance(run, base, name, selection, length)
    for t in range(random_trials):
        base = _random_game(run, 2, 3)
        m, n = base.shape
        p = int(run.rng.integers(1, 4))
        T = int(run.rng.integers(1, m + 1))
        rows = list(_equipartitioned_rows(m, p, T))
        chosen = rows[int(run.rng.integers(0, len(rows)))]
        selection = Selection(rows=chosen, cols=_random_subset(run, n**p), m=m, n=n, p=p)
        _max_instance(run, base, f"random{t}", selection, int(run.rng.integers(1, p + 1)))
    return {"games": [c[0] for c in configs], "p": [list(c[1]) for c in configs], "random": random_trials}


@_lemma("product-theorem")
def _product_theorem(run: _Run) -> dict[str, Any]:
    trials = RANDOM_SUITE_SIZE if run.small else 50
    for t in range(trials):
        size = int(run.rng.integers(1, 7))
        universe = list(range(size))
        covers = [set(_random_subset(run, size, non_empty=False)) for _ in range(int(run.rng.integers(1, 5)))]
        for u in universe:
            if not any(u in c for c in covers):
                covers[int(run.rng.integers(0, len(covers)))].add(u)
        k = min(sum(1 for c in covers if u in c) for u in universe)
        family = [_random_subset(run, size, non_empty=False) for _ in range(int(run.rng.integers(1, 9)))]
        result = product_theorem_check(universe, covers, k, family)
        run.record(f"random{t}", result.holds, result.lhs, result.rhs)
    # the cyclic-window corollary on digit families of column sets
    for t in range(trials):
        n = int(run.rng.integers(2, 4))
        p = int(run.rng.integers(1, 4))
        length = int(run.rng.integers(1, p + 1))
        cols = _random_subset(run, n**p)
        windows = projection_windows(p, length)
        k = length // math.gcd(p, length)
        universe = [(d, gamma) for d in range(n) for gamma in range(p)]
        covers = [[(d, gamma) for d in range(n) for gamma in w] for w in windows]
        product = product_theorem_check(universe, covers, k, digit_family(cols, n, p))
        best = max(len({project_column(c, n, w) for c in cols}) for w in windows)
        holds = product.holds and best**p >= len(cols) ** length
        run.record(f"window{t}:n={n},p={p},l={length}", holds, f"{best}^{p}", f"{len(cols)}^{length}")
    return {"random": trials}


# ============================================================================
# SUPPLEMENTARY CHECKS
# ============================================================================


@_lemma("rank-gap")
def _rank_gap(run: _Run) -> dict[str, Any]:
    ps = (2, 3, 4) if run.small else (2, 3)
    phi0 = phi_base()
    for p in ps:
        game = interlace_power(phi0, p, max_cells=run.max_cells)
        rank, rank_cap = interlace_rank_bound(phi0, p)
        log_rank = lower_bound_log_rank(game)
        depth = run.cache.depth(game)
        # the rank bound sits at ceil(log2 p) while the true cost is strictly above it
        expected = ceil_log2(p)
        holds = log_rank == expected and depth > expected and rank <= rank_cap
        run.record(f"phi0:p={p},D={depth}", holds, log_rank, expected)
    return {"game": "phi0", "p": list(ps)}


@_lemma("bracket-count")
def _bracket_count(run: _Run) -> dict[str, Any]:
    cases = [("phi0", 2, Fraction(1), Fraction(3, 4)), ("I2", 2, _HALF, Fraction(1))]
    if run.small:
        cases += [
            ("phi0", 3, Fraction(1), _HALF),
            ("I2", 2, Fraction(1), _HALF),
            ("L2", 3, _HALF, Fraction(1, 4)),
            ("phi1", 1, Fraction(3, 4), Fraction(1)),
        ]
    for name, p, x, y in cases:
        spec = BracketSpec.of(named_game(name), p, x, y)
        counted = sum(1 for _ in run.members(spec))
        expected = bracket_member_count(spec)
        run.record(f"{name}:<{p},{x},{y}>", counted == expected, counted, expected)
    return {"cases": [[c[0], c[1], _fmt(c[2]), _fmt(c[3])] for c in cases]}


@_lemma("one-round-upper")
def _one_round_upper(run: _Run) -> dict[str, Any]:
    cases = [("phi0", 2, 1), ("phi0", 3, 1)]
    if run.small:
        cases += [("phi0", 2, 2), ("phi0", 3, 2), ("I2", 2, 1)]
    for name, kappa, copies in cases:
        outcome = one_round_upper_instance(
            named_game(name), kappa, copies, policy=run.cache.policy, max_cells=run.max_cells
        )
        run.record(f"{name}:kappa={kappa},l={copies}", outcome.holds, outcome.lhs, outcome.rhs)
        if outcome.note:
            run.notes.append(f"{name}:kappa={kappa},l={copies}: {outcome.note}")
    return {"cases": [list(c) for c in cases]}


@_lemma("transpose-ds")
def _transpose_ds(run: _Run) -> dict[str, Any]:
    cases = [("phi0", 1), ("phi0", 2), ("I2", 1)]
    if run.small:
        cases += [("phi0", 3), ("L2", 1), ("L2", 2)]
    for name, copies in cases:
        lhs, rhs = transpose_ds_instance(
            named_game(name), copies, policy=run.cache.policy, max_cells=run.max_cells
        )
        run.record(f"{name}:l={copies}", lhs == rhs, lhs, rhs)
    return {"cases": [list(c) for c in cases]}


def run_lemma_suite(lemma_id: str, grid: str = "small", seed: int | None = None, config: RunConfig | None = None) -> LemmaReport:
    """Run one lemma checker over a preset grid.

    Reports are deterministic in (lemma_id, grid, seed); violations are data,
    sorted by instance key.
    """
    if lemma_id not in _LEMMAS:
        raise UsageError(f"Unknown lemma id {lemma_id!r}; known ids: {', '.join(lemma_ids())}")
    if grid not in PRESETS:
        raise UsageError(f"Unknown grid preset {grid!r}; known presets: {', '.join(PRESETS)}")
    config = config or current_config()
    seed = config.seed if seed is None else seed
    started = time.perf_counter()
    run = _Run(
        preset=grid,
        seed=seed,
        rng=np.random.default_rng(seed),
        cache=ComplexityCache(policy=config.policy),
        limit=config.enumeration_limit,
        max_cells=config.max_cells,
    )
    described = _LEMMAS[lemma_id](run)
    report = LemmaReport.build(
        lemma=lemma_id,
        grid={"preset": grid, **described},
        instances=run.instances,
        violations=run.violations,
        seed=seed,
        vacuous=run.vacuous,
        notes=run.notes,
        wall_time=time.perf_counter() - started,
    )
    logger.info(
        f"Lemma {lemma_id} ({grid}): {report.status}, {report.instances} instances, "
        f"{report.vacuous} vacuous, {len(report.violations)} violations in {report.wall_time:.2f}s"
    )
    return report
