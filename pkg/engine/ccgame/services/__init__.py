"""Algorithms over games: interlacing, projections, subgames, solving, brackets and reports."""
from .brackets import BracketSpec, bracket_complexity, enumerate_bracket
from .directsum import direct_sum_power, lift_protocol, verify_one_round_upper, verify_transpose_ds
from .interlace import alternating_game, interlace_binary, interlace_power
from .lemma_suite import run_lemma_suite
from .numerics import NumericConstantsSpec, verify_numeric_constants
from .solver import greedy_upper, solve_exact, solve_reference
from .subgame import is_subgame

__all__ = [
    "BracketSpec",
    "bracket_complexity",
    "enumerate_bracket",
    "direct_sum_power",
    "lift_protocol",
    "verify_one_round_upper",
    "verify_transpose_ds",
    "alternating_game",
    "interlace_binary",
    "interlace_power",
    "run_lemma_suite",
    "NumericConstantsSpec",
    "verify_numeric_constants",
    "greedy_upper",
    "solve_exact",
    "solve_reference",
    "is_subgame",
]
