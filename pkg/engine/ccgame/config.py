# Engine configuration from environment
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from dotenv import load_dotenv

from ccgame.constants import (
    DEFAULT_ENUMERATION_LIMIT,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_CELLS,
    DEFAULT_PRECISION_BITS,
    DEFAULT_SEED,
    DEFAULT_SOLVER_MAX_SIDE,
    DEFAULT_SOLVER_MIN_SIDE,
    MIN_PRECISION_BITS,
)
from ccgame.exceptions import ConfigurationError

# Values in a local .env file apply unless the variable is already set
load_dotenv()

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e


# SolverPolicy: the envelope of matrices the exact solver accepts
@dataclass(frozen=True)
class SolverPolicy:
    min_side: int = DEFAULT_SOLVER_MIN_SIDE
    max_side: int = DEFAULT_SOLVER_MAX_SIDE

    def __post_init__(self) -> None:
        if self.min_side < 1 or self.max_side < self.min_side:
            raise ConfigurationError(
                f"Invalid solver policy: min_side={self.min_side}, max_side={self.max_side}"
            )

    def admits(self, rows: int, cols: int) -> bool:
        return min(rows, cols) <= self.min_side and max(rows, cols) <= self.max_side


# RunConfig: everything a command or suite run may be tuned with
@dataclass(frozen=True)
class RunConfig:
    max_cells: int = DEFAULT_MAX_CELLS
    policy: SolverPolicy = field(default_factory=SolverPolicy)
    seed: int = DEFAULT_SEED
    output_dir: Path = Path(".")
    verbosity: str = DEFAULT_LOG_LEVEL
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self) -> None:
        if self.max_cells < 1:
            raise ConfigurationError(f"Cell guard must be >= 1, got {self.max_cells}")
        if self.enumeration_limit < 1:
            raise ConfigurationError(f"Enumeration limit must be >= 1, got {self.enumeration_limit}")
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ConfigurationError(
                f"Precision must be at least {MIN_PRECISION_BITS} bits, got {self.precision_bits}"
            )
        if self.verbosity.upper() not in _LOG_LEVELS:
            raise ConfigurationError(f"Unknown log level {self.verbosity!r}")

    @classmethod
    def from_env(cls) -> "RunConfig":
        # Read CCGAME_* variables at call time so tests and shells can override them
        return cls(
            max_cells=_int_env("CCGAME_MAX_CELLS", DEFAULT_MAX_CELLS),
            policy=SolverPolicy(
                min_side=_int_env("CCGAME_SOLVER_MIN_SIDE", DEFAULT_SOLVER_MIN_SIDE),
                max_side=_int_env("CCGAME_SOLVER_MAX_SIDE", DEFAULT_SOLVER_MAX_SIDE),
            ),
            seed=_int_env("CCGAME_SEED", DEFAULT_SEED),
            output_dir=Path(os.environ.get("CCGAME_OUTPUT_DIR", ".") or "."),
            verbosity=os.environ.get("CCGAME_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
            enumeration_limit=_int_env("CCGAME_ENUM_LIMIT", DEFAULT_ENUMERATION_LIMIT),
            precision_bits=_int_env("CCGAME_PRECISION_BITS", DEFAULT_PRECISION_BITS),
        )

    def with_overrides(
        self,
        max_cells: int | None = None,
        min_side: int | None = None,
        max_side: int | None = None,
        seed: int | None = None,
        verbosity: str | None = None,
    ) -> "RunConfig":
        # Flags override environment; None leaves a value untouched
        policy = SolverPolicy(
            min_side=self.policy.min_side if min_side is None else min_side,
            max_side=self.policy.max_side if max_side is None else max_side,
        )
        return replace(
            self,
            max_cells=self.max_cells if max_cells is None else max_cells,
            policy=policy,
            seed=self.seed if seed is None else seed,
            verbosity=self.verbosity if verbosity is None else verbosity.upper(),
        )


def current_config() -> RunConfig:
    return RunConfig.from_env()


def resolve_max_cells(max_cells: int | None) -> int:
    return current_config().max_cells if max_cells is None else max_cells


def resolve_policy(policy: SolverPolicy | None) -> SolverPolicy:
    return current_config().policy if policy is None else policy
