# Custom exception classes for game construction, solving and verification
from __future__ import annotations

from typing import Any


# Base exception for all communication game errors
class GameComputationError(Exception):
    pass


# Raised when a value grid is empty or ragged
class ShapeError(GameComputationError):
    pass


# Raised when a value, index or parameter lies outside its domain
class DomainError(GameComputationError):
    pass


# Raised when a construction or search is refused because it is too large
class SizeGuardError(GameComputationError):
    def __init__(self, message: str, requested: int | None = None, limit: int | None = None, details: Any = None):
        super().__init__(message)
        self.requested = requested
        self.limit = limit
        # e.g. the PhiDims of a refused alternating game
        self.details = details


# Raised when the hypothesis of a lemma does not hold for the given input
class PreconditionError(GameComputationError):
    pass


# Raised when a protocol tree does not partition its live inputs
class ProtocolStructureError(GameComputationError):
    pass


# Raised for unknown lemma ids, presets or malformed command lines
class UsageError(GameComputationError):
    pass


# Raised when environment configuration is invalid
class ConfigurationError(GameComputationError):
    pass
