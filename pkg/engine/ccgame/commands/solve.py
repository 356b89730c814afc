# Subcommands that analyse stored games: solve, subgame
from __future__ import annotations

import argparse
import logging

from ccgame.commands.output import emit
from ccgame.config import RunConfig
from ccgame.constants import EXIT_OK
from ccgame.exceptions import UsageError
from ccgame.models.documents import SolveDocument, SubgameDocument
from ccgame.services.solver import greedy_upper, lower_bound_leafcount, solve_exact
from ccgame.services.subgame import is_subgame
from ccgame.utils.json_io import protocol_to_document, read_matrix, witness_to_document

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    solve = subparsers.add_parser("solve", help="Communication complexity of a stored game")
    mode = solve.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact search (default)")
    mode.add_argument("--greedy", action="store_true", help="fast upper bound with a valid protocol")
    solve.add_argument("--in", dest="source", required=True, help="matrix JSON file")
    solve.add_argument("--budget", type=int, help="give up above this many bits (exact only)")
    solve.add_argument("--out", help="output file (default stdout)")
    solve.set_defaults(handler=handle_solve)

    subgame = subparsers.add_parser("subgame", help="Is one stored game a subgame of another")
    subgame.add_argument("--small", required=True, help="matrix JSON file of the candidate subgame")
    subgame.add_argument("--large", required=True, help="matrix JSON file of the containing game")
    subgame.add_argument("--out", help="output file (default stdout)")
    subgame.set_defaults(handler=handle_subgame)


def handle_solve(args: argparse.Namespace, config: RunConfig) -> int:
    game = read_matrix(args.source)
    if args.greedy and args.budget is not None:
        raise UsageError("--budget applies to exact solving only")
    if args.budget is not None and args.budget < 0:
        raise UsageError(f"--budget must be >= 0, got {args.budget}")
    if args.greedy:
        result = greedy_upper(game)
    else:
        result = solve_exact(game, depth_budget=args.budget, policy=config.policy)
    logger.info(f"{result.method} solve of a {game.rows}x{game.cols} game: depth {result.depth}")
    document = SolveDocument(
        m=game.rows,
        n=game.cols,
        method=result.method,
        depth=result.depth,
        lower_bound=lower_bound_leafcount(game),
        budget=args.budget,
        nodes=result.stats.nodes if result.stats else 0,
        protocol=protocol_to_document(result.tree) if result.tree is not None else None,
    )
    emit(document, args.out, config)
    return EXIT_OK


def handle_subgame(args: argparse.Namespace, config: RunConfig) -> int:
    small, large = read_matrix(args.small), read_matrix(args.large)
    witness = is_subgame(small, large)
    document = SubgameDocument(
        subgame=witness is not None,
        witness=witness_to_document(witness) if witness is not None else None,
    )
    emit(document, args.out, config)
    return EXIT_OK
