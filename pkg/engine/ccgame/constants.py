# Engine-wide constants for communication game construction and verification
from __future__ import annotations

from fractions import Fraction

# ============================================================================
# MATRIX MATERIALIZATION LIMITS
# ============================================================================

# Largest number of cells any construction may materialize.
# Overridable through CCGAME_MAX_CELLS or the --max-cells flag.
DEFAULT_MAX_CELLS: int = 2**24

# The base game of the alternating family, a single row [1 0]
PHI_BASE: tuple[tuple[int, ...], ...] = ((1, 0),)

# Padded families are boolean
PADDED_FAMILY_ALPHABET: int = 2

# ============================================================================
# EXACT SOLVER POLICY
# ============================================================================

# Exact solving accepts min(m, n) <= MIN_SIDE and max(m, n) <= MAX_SIDE.
# Bipartition counts grow as 2^(side - 1), so the smaller side bounds the work.
DEFAULT_SOLVER_MIN_SIDE: int = 4
DEFAULT_SOLVER_MAX_SIDE: int = 16

# Hard cap of the unpruned reference recursion (rows, columns and alphabet)
REFERENCE_MAX_SIDE: int = 4
REFERENCE_MAX_ALPHABET: int = 4

# The greedy fallback enumerates every canonical bipartition of a side with at
# most this many distinct lines; wider sides use value splits and halvings.
GREEDY_FULL_ENUMERATION_CLASSES: int = 10

# ============================================================================
# ENUMERATION AND RANDOM SUITES
# ============================================================================

# Bracket sets larger than this are refused instead of enumerated
DEFAULT_ENUMERATION_LIMIT: int = 200_000

# Column sets drawn per configuration when a column power set is too large
PROJECTION_COLUMN_SAMPLE: int = 10_000

# Size of each seeded random suite of the constructive lemma checkers
RANDOM_SUITE_SIZE: int = 1000

# Default seed for every seeded suite
DEFAULT_SEED: int = 0

# ============================================================================
# NUMERIC CONSTANTS OF THE LARGE-PARAMETER COROLLARIES
# ============================================================================

# Interval arithmetic precision in bits; never run below the minimum
DEFAULT_PRECISION_BITS: int = 128
MIN_PRECISION_BITS: int = 80

# Interlace width factor: B = 2^k * 255/256
INTERLACE_WIDTH_FACTOR: Fraction = Fraction(255, 256)

# Copies in the direct sum of the upper-bound corollary
DIRECT_SUM_COPIES: int = 178

# Per-round bits of the lower-bound corollary
ROUND_BITS: int = 10_000

# 178 * 10000, the denominator of the multiplicative saving
SAVING_DENOMINATOR: int = DIRECT_SUM_COPIES * ROUND_BITS

# Generations checked by the multiplicative-form arithmetic
SAVING_GENERATIONS: int = 100

# Values of h checked for the ceiling chain of the upper-bound corollary
CEILING_CHAIN_STEPS: int = 8

# Lower limit on a in the induction theorem (a > 3/8)
INDUCTION_MIN_A: Fraction = Fraction(3, 8)

# Exponent 13/8 of the induction theorem's interlace count
INDUCTION_EXPONENT: Fraction = Fraction(13, 8)

# Defaults of the constants subcommand
DEFAULT_CONSTANTS_K: int = 10_000
DEFAULT_CONSTANTS_A: int = 10
DEFAULT_CONSTANTS_S: int = 2

# ============================================================================
# CLI EXIT STATUSES
# ============================================================================

EXIT_OK: int = 0
EXIT_VIOLATION: int = 1
EXIT_USAGE: int = 2
EXIT_SIZE_GUARD: int = 3

# ============================================================================
# LOGGING
# ============================================================================

LOG_FORMAT: str = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DEFAULT_LOG_LEVEL: str = "INFO"
