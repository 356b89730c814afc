# Row/column selections of an interlaced game and base-n column digits
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ccgame.exceptions import DomainError


@dataclass(frozen=True)
class DigitTuple:
    # digits[0] is the most significant digit b_{p-1}, digits[-1] is b_0
    digits: tuple[int, ...]
    base: int

    @property
    def width(self) -> int:
        return len(self.digits)

    def digit(self, component: int) -> int:
        # b_component, the digit component `component` of an interlacing reads
        return self.digits[self.width - 1 - component]

    @property
    def value(self) -> int:
        return digits_value(self.digits, self.base)


def base_digits(c: int, n: int, p: int) -> DigitTuple:
    # Base-n expansion of column index c with exactly p digits
    if n < 1 or p < 0:
        raise DomainError(f"Invalid digit context n={n}, p={p}")
    if not 0 <= c < n**p:
        raise DomainError(f"Column index {c} outside [0, {n}^{p})")
    digits = []
    rest = c
    for _ in range(p):
        rest, d = divmod(rest, n)
        digits.append(d)
    return DigitTuple(digits=tuple(reversed(digits)), base=n)


def digits_value(digits: Sequence[int], n: int) -> int:
    # Inverse of base_digits; digits are most significant first
    value = 0
    for d in digits:
        if not 0 <= d < n:
            raise DomainError(f"Digit {d} outside [0, {n})")
        value = value * n + d
    return value


def column_digit(c: int, n: int, component: int) -> int:
    return (c // n**component) % n


@dataclass(frozen=True)
class Selection:
    """Rows R of [m*p] and columns C of [n^p] picked from an interlacing of an m x n game.

    Row m*gamma + r is row r of component gamma; column c is read by
    component gamma through its base-n digit b_gamma.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    m: int
    n: int
    p: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1 or self.p < 1:
            raise DomainError(f"Invalid selection context m={self.m}, n={self.n}, p={self.p}")
        _check_sorted_unique(self.rows, self.m * self.p, "row")
        _check_sorted_unique(self.cols, self.n**self.p, "column")

    @classmethod
    def of(cls, rows: Iterable[int], cols: Iterable[int], m: int, n: int, p: int) -> "Selection":
        # Normalize arbitrary iterables into sorted duplicate-free index sets
        return cls(rows=tuple(sorted(set(rows))), cols=tuple(sorted(set(cols))), m=m, n=n, p=p)

    @property
    def is_empty(self) -> bool:
        return not self.rows or not self.cols

    def component_rows(self, component: int) -> tuple[int, ...]:
        # Rows of R inside component block `component`
        low = self.m * component
        return tuple(i for i in self.rows if low <= i < low + self.m)

    def component_counts(self) -> list[int]:
        counts = [0] * self.p
        for i in self.rows:
            counts[i // self.m] += 1
        return counts

    def is_equipartitioned(self, T: Fraction | int | float) -> bool:
        return is_equipartitioned(self.rows, self.m, T, self.p)


def _check_sorted_unique(indices: tuple[int, ...], bound: int, what: str) -> None:
    previous = -1
    for i in indices:
        if not 0 <= i < bound:
            raise DomainError(f"Selected {what} {i} outside [0, {bound})")
        if i <= previous:
            raise DomainError(f"Selected {what}s must be strictly increasing, got {list(indices)}")
        previous = i


def row_quota(T: Fraction | int | float) -> int:
    # Exact row count per component of an m,T,p-equipartitioned set
    return math.ceil(Fraction(T))


def is_equipartitioned(rows: Iterable[int], m: int, T: Fraction | int | float, p: int) -> bool:
    # Every component block holds exactly ceil(T) selected rows
    quota = row_quota(T)
    counts = [0] * p
    for i in rows:
        if not 0 <= i < m * p:
            return False
        counts[i // m] += 1
    return all(c == quota for c in counts)
