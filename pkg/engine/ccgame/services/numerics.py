# Interval-arithmetic checks of the constants behind the large-parameter corollaries
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from ccgame.config import current_config
from ccgame.constants import (
    CEILING_CHAIN_STEPS,
    DIRECT_SUM_COPIES,
    INDUCTION_EXPONENT,
    INDUCTION_MIN_A,
    INTERLACE_WIDTH_FACTOR,
    MIN_PRECISION_BITS,
    ROUND_BITS,
    SAVING_DENOMINATOR,
    SAVING_GENERATIONS,
)
from ccgame.exceptions import DomainError
from ccgame.models.documents import LemmaReport, Violation

logger = logging.getLogger(__name__)

# digits kept when interval midpoints are reported
_REPORT_DIGITS = 6


@dataclass(frozen=True)
class NumericConstantsSpec:
    k: int
    a: int
    s: int
    width_factor: Fraction = INTERLACE_WIDTH_FACTOR

    def __post_init__(self) -> None:
        if self.s < 1:
            raise DomainError(f"s must be >= 1, got {self.s}")
        if self.k <= 3:
            raise DomainError(f"k must be > 3, got {self.k}")
        if self.k + self.a <= 0:
            raise DomainError(f"k + a must be positive, got {self.k + self.a}")


@dataclass(frozen=True)
class NumericCheck:
    name: str
    holds: bool
    lhs: float | int | str
    rhs: float | int | str


def _mid(x) -> float:
    return round(float(x.mid), _REPORT_DIGITS)


def _at_most(lhs, rhs) -> bool:
    # lhs <= rhs certified: upper end of lhs below lower end of rhs
    return bool(lhs.b <= rhs.a)


def _ceil_certified(x) -> int:
    # ceil of a positive interval whose endpoints share it
    low, high = int(x.a), int(x.b)
    if low != high or x.a == low:
        raise DomainError(f"Precision too low to decide the ceiling of {x}")
    return low + 1


def _checks(spec: NumericConstantsSpec) -> list[NumericCheck]:
    k, a, s = spec.k, spec.a, spec.s
    base = iv.mpf(k + a)
    rho = iv.exp(iv.log(base) / s)
    two = iv.mpf(2)
    if not rho.a > 2:
        raise DomainError(f"rho = (k + a)^(1/s) must exceed 2, got about {_mid(rho)}")
    ratio = ((rho - 1) / (rho - 2)) ** s
    checks = []

    # (a) leading factor of the induction step stays within the width factor
    exponent = iv.mpf(INDUCTION_EXPONENT.numerator) / INDUCTION_EXPONENT.denominator
    lead = (3 * two**a - 3) / (iv.exp(iv.log(two) * exponent) * two**a - 4)
    lhs = lead * ratio
    factor = iv.mpf(spec.width_factor.numerator) / spec.width_factor.denominator
    checks.append(NumericCheck("induction-ratio", _at_most(lhs, factor), _mid(lhs), _mid(factor)))

    # (b) the logarithmic correction stays above -1
    inner = iv.mpf(3) / 4 * ratio - base / two**k
    if not inner.a > 0:
        raise DomainError("Logarithm argument of the correction term is not positive")
    log_term = iv.log(inner) / iv.log(two)
    checks.append(NumericCheck("correction-term", bool(log_term.a > -1), _mid(log_term), -1))

    # (c) rho - 1 <= (k + a)^(1/s - 1/(k - 3))
    power = iv.mpf(1) / s - iv.mpf(1) / (k - 3)
    root_lhs = rho - 1
    root_rhs = iv.exp(iv.log(base) * power)
    checks.append(NumericCheck("root-gap", _at_most(root_lhs, root_rhs), _mid(root_lhs), _mid(root_rhs)))

    # (d) ceil(178 log2 255) - 178 * 8 <= -1
    log255 = iv.log(iv.mpf(255)) / iv.log(two)
    first_ceiling = _ceil_certified(DIRECT_SUM_COPIES * log255)
    step = first_ceiling - DIRECT_SUM_COPIES * 8
    checks.append(NumericCheck("copies-ceiling", step <= -1, step, -1))

    # (e) exact: (1780000 - 1) i <= (1 - 1/1780000) * 178 * 10000 i
    saving = Fraction(1) - Fraction(1, SAVING_DENOMINATOR)
    failing = [
        i
        for i in range(1, SAVING_GENERATIONS + 1)
        if Fraction(SAVING_DENOMINATOR - 1) * i > saving * DIRECT_SUM_COPIES * ROUND_BITS * i
    ]
    checks.append(
        NumericCheck("multiplicative-form", not failing, f"{len(failing)} failing i", f"i in 1..{SAVING_GENERATIONS}")
    )

    # (f) (rho - 1)^(k - 3) <= rho^(k - 3 - s), compared as logarithms
    chain_lhs = iv.log(rho - 1) * (k - 3)
    chain_rhs = iv.log(rho) * (k - 3 - s)
    checks.append(NumericCheck("ratio-power", _at_most(chain_lhs, chain_rhs), _mid(chain_lhs), _mid(chain_rhs)))

    # (g) hypotheses of the induction theorem, exact
    hypotheses = Fraction(a) > INDUCTION_MIN_A and k > 3 and s <= k
    checks.append(NumericCheck("induction-hypotheses", hypotheses, f"a={a},k={k},s={s}", "a>3/8,k>3,s<=k"))

    # (h) ceil(178h log2(2^k 255/256)) <= 178hk - h, directly and through h * ceil(178 log2 255)
    direct_ok, distributed_ok = True, True
    for h in range(1, CEILING_CHAIN_STEPS + 1):
        c_h = _ceil_certified(DIRECT_SUM_COPIES * h * log255)
        # 178hk and 178h*8 are integers, so they leave the ceiling unchanged
        direct = DIRECT_SUM_COPIES * h * k + c_h - DIRECT_SUM_COPIES * h * 8
        direct_ok = direct_ok and direct <= DIRECT_SUM_COPIES * h * k - h
        distributed_ok = distributed_ok and c_h <= h * first_ceiling
    checks.append(NumericCheck("ceiling-chain", direct_ok, f"h in 1..{CEILING_CHAIN_STEPS}", "178hk - h"))
    checks.append(NumericCheck("ceiling-distribution", distributed_ok, f"h in 1..{CEILING_CHAIN_STEPS}", "h*ceil(178 log2 255)"))
    return checks


def verify_numeric_constants(spec: NumericConstantsSpec, precision_bits: int | None = None) -> LemmaReport:
    """Evaluate every numeric side condition with interval arithmetic.

    A claim lhs <= rhs passes only when the whole lhs interval lies below the
    whole rhs interval, so rounding can never turn a failure into a pass.
    """
    bits = current_config().precision_bits if precision_bits is None else precision_bits
    if bits < MIN_PRECISION_BITS:
        raise DomainError(f"Precision must be at least {MIN_PRECISION_BITS} bits, got {bits}")
    started = time.perf_counter()
    saved = iv.prec
    iv.prec = bits
    try:
        checks = _checks(spec)
    finally:
        iv.prec = saved
    violations = [Violation(instance=c.name, lhs=c.lhs, rhs=c.rhs) for c in checks if not c.holds]
    values: dict[str, int | float | str] = {}
    for c in checks:
        values[f"{c.name}.lhs"] = c.lhs
        values[f"{c.name}.rhs"] = c.rhs
    report = LemmaReport.build(
        lemma="numeric-constants",
        grid={"k": spec.k, "a": spec.a, "s": spec.s, "precision_bits": bits},
        instances=len(checks),
        violations=violations,
        values=values,
        notes=["ceiling-distribution is the step ceil(178h log2 255) <= h ceil(178 log2 255), reported separately"],
        wall_time=time.perf_counter() - started,
    )
    for v in violations:
        logger.warning(f"Numeric check {v.instance} failed: {v.lhs} vs {v.rhs}")
    logger.info(f"Numeric constants for k={spec.k}, a={spec.a}, s={spec.s}: {report.status}")
    return report
