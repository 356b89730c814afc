"""CLI subcommands; each module registers its parsers on the root parser."""
from .build import register as register_build
from .solve import register as register_solve
from .verify import register as register_verify

__all__ = ["register_build", "register_solve", "register_verify"]
