# ccgame command-line entry point
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from ccgame import __version__
from ccgame.commands import register_build, register_solve, register_verify
from ccgame.config import RunConfig
from ccgame.constants import EXIT_SIZE_GUARD, EXIT_USAGE, LOG_FORMAT
from ccgame.exceptions import GameComputationError, SizeGuardError, UsageError
from ccgame.models.documents import ErrorDocument
from ccgame.utils.json_io import canonical_json

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits on bad input; report it through the usual error path instead
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="ccgame",
        description="Build, solve and verify communication games over interlaced matrices",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--max-cells", type=int, help="cell guard (env CCGAME_MAX_CELLS)")
    parser.add_argument("--solver-min-side", type=int, help="exact solver: largest allowed short side")
    parser.add_argument("--solver-max-side", type=int, help="exact solver: largest allowed long side")
    parser.add_argument("--seed", type=int, help="seed for random grids (env CCGAME_SEED)")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_build(subparsers)
    register_solve(subparsers)
    register_verify(subparsers)
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr, force=True)


def _report_error(error: Exception) -> None:
    document = ErrorDocument(error=type(error).__name__, message=str(error))
    sys.stderr.write(canonical_json(document))
    sys.stderr.flush()


def _dispatch(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        return args.handler(args, config)
    except GameComputationError:
        raise
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        raise GameComputationError(f"Unexpected error in {args.command}: {e}") from e


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one subcommand and return its exit status.

    0 success or pass, 1 a lemma violation, 2 usage or other errors,
    3 a size-guard refusal. Errors are also written to stderr as JSON.
    """
    try:
        args = build_parser().parse_args(argv)
        config = RunConfig.from_env().with_overrides(
            max_cells=args.max_cells,
            min_side=args.solver_min_side,
            max_side=args.solver_max_side,
            seed=args.seed,
            verbosity="DEBUG" if args.verbose else None,
        )
        _configure_logging(config.verbosity)
        return _dispatch(args, config)
    except SizeGuardError as e:
        logger.warning(f"Refused: {e}")
        _report_error(e)
        return EXIT_SIZE_GUARD
    except UsageError as e:
        _report_error(e)
        return EXIT_USAGE
    except GameComputationError as e:
        logger.error(f"{type(e).__name__}: {e}")
        _report_error(e)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
