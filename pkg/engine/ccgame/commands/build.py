# Subcommands that build games: phi, interlace, dsum
from __future__ import annotations

import argparse
import logging

from ccgame.commands.output import emit
from ccgame.config import RunConfig
from ccgame.constants import EXIT_OK
from ccgame.exceptions import UsageError
from ccgame.services.directsum import direct_sum_power
from ccgame.services.interlace import alternating_game, display_order, interlace_power, padded_family
from ccgame.utils.json_io import matrix_to_document, read_matrix

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    phi = subparsers.add_parser("phi", help="Build the alternating game phi_i of width B")
    phi.add_argument("--B", type=int, default=2, help="interlace width (default 2)")
    phi.add_argument("--i", type=int, help="generation index")
    phi.add_argument("--padded", type=int, metavar="N", help="build the padded family member for N instead")
    phi.add_argument("--out", help="output file (default stdout)")
    phi.set_defaults(handler=handle_phi)

    interlace = subparsers.add_parser("interlace", help="p-fold interlacing of a stored game")
    interlace.add_argument("--in", dest="source", required=True, help="matrix JSON file")
    interlace.add_argument("--p", type=int, required=True, help="number of components")
    interlace.add_argument("--display", action="store_true", help="reverse digit significance in the columns")
    interlace.add_argument("--out", help="output file (default stdout)")
    interlace.set_defaults(handler=handle_interlace)

    dsum = subparsers.add_parser("dsum", help="l-fold direct sum of a stored game")
    dsum.add_argument("--in", dest="source", required=True, help="matrix JSON file")
    dsum.add_argument("--l", dest="copies", type=int, required=True, help="number of copies")
    dsum.add_argument("--out", help="output file (default stdout)")
    dsum.set_defaults(handler=handle_dsum)


def handle_phi(args: argparse.Namespace, config: RunConfig) -> int:
    if (args.i is None) == (args.padded is None):
        raise UsageError("phi needs exactly one of --i and --padded")
    if args.padded is not None:
        game = padded_family(args.B, args.padded, max_cells=config.max_cells)
    else:
        game = alternating_game(args.B, args.i, max_cells=config.max_cells)
    logger.info(f"Built a {game.rows}x{game.cols} game")
    emit(matrix_to_document(game), args.out, config)
    return EXIT_OK


def handle_interlace(args: argparse.Namespace, config: RunConfig) -> int:
    base = read_matrix(args.source)
    game = interlace_power(base, args.p, max_cells=config.max_cells)
    if args.display:
        game = display_order(game, base.cols, args.p)
    emit(matrix_to_document(game), args.out, config)
    return EXIT_OK


def handle_dsum(args: argparse.Namespace, config: RunConfig) -> int:
    game = direct_sum_power(read_matrix(args.source), args.copies, max_cells=config.max_cells)
    emit(matrix_to_document(game), args.out, config)
    return EXIT_OK
