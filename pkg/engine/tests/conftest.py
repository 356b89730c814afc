# Shared fixtures: a clean configuration and the small games most tests use
from __future__ import annotations

from pathlib import Path

import pytest

from ccgame.config import RunConfig
from ccgame.models.matrix import GameMatrix, new_matrix, phi_base

GOLDEN = Path(__file__).parent / "golden"

_ENV_VARS = (
    "CCGAME_MAX_CELLS",
    "CCGAME_SOLVER_MIN_SIDE",
    "CCGAME_SOLVER_MAX_SIDE",
    "CCGAME_SEED",
    "CCGAME_LOG_LEVEL",
    "CCGAME_OUTPUT_DIR",
    "CCGAME_ENUM_LIMIT",
    "CCGAME_PRECISION_BITS",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in _ENV_VARS:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def config() -> RunConfig:
    return RunConfig()


@pytest.fixture
def phi0() -> GameMatrix:
    return phi_base()


@pytest.fixture
def identity() -> GameMatrix:
    return new_matrix([[1, 0], [0, 1]])


@pytest.fixture
def golden():
    # golden("name.json") -> the stored canonical text
    def read(name: str) -> str:
        return (GOLDEN / name).read_text(encoding="utf-8")

    return read
