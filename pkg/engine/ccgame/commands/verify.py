# Subcommands that produce or merge reports: verify, constants, report
from __future__ import annotations

import argparse
import logging

from ccgame.commands.output import emit
from ccgame.config import RunConfig
from ccgame.constants import DEFAULT_CONSTANTS_A, DEFAULT_CONSTANTS_K, DEFAULT_CONSTANTS_S, EXIT_OK, EXIT_VIOLATION
from ccgame.exceptions import UsageError
from ccgame.models.documents import LemmaReport, MergedReport
from ccgame.services.lemma_suite import PRESETS, lemma_ids, run_lemma_suite
from ccgame.services.numerics import NumericConstantsSpec, verify_numeric_constants
from ccgame.utils.json_io import read_report

logger = logging.getLogger(__name__)


def _exit_for(status: str) -> int:
    return EXIT_OK if status == "pass" else EXIT_VIOLATION


def register(subparsers: argparse._SubParsersAction) -> None:
    verify = subparsers.add_parser("verify", help="Check a lemma over a preset grid")
    verify.add_argument("--lemma", required=True, help=f"one of: {', '.join(lemma_ids())}")
    verify.add_argument("--grid", default="small", help=f"grid preset, one of: {', '.join(PRESETS)}")
    verify.add_argument("--seed", type=int, dest="suite_seed", help="seed for random grids (default: --seed / config)")
    verify.add_argument("--out", help="output file (default stdout)")
    verify.set_defaults(handler=handle_verify)

    constants = subparsers.add_parser("constants", help="Interval checks of the large-parameter constants")
    constants.add_argument("--k", type=int, default=DEFAULT_CONSTANTS_K)
    constants.add_argument("--a", type=int, default=DEFAULT_CONSTANTS_A)
    constants.add_argument("--s", type=int, default=DEFAULT_CONSTANTS_S)
    constants.add_argument("--precision", type=int, help="interval precision in bits")
    constants.add_argument("--out", help="output file (default stdout)")
    constants.set_defaults(handler=handle_constants)

    report = subparsers.add_parser("report", help="Merge lemma reports into one summary")
    report.add_argument("--merge", nargs="+", required=True, metavar="FILE", help="report JSON files")
    report.add_argument("--out", help="output file (default stdout)")
    report.set_defaults(handler=handle_report)


def handle_verify(args: argparse.Namespace, config: RunConfig) -> int:
    seed = config.seed if args.suite_seed is None else args.suite_seed
    report = run_lemma_suite(args.lemma, grid=args.grid, seed=seed, config=config)
    emit(report, args.out, config)
    return _exit_for(report.status)


def handle_constants(args: argparse.Namespace, config: RunConfig) -> int:
    spec = NumericConstantsSpec(k=args.k, a=args.a, s=args.s)
    bits = config.precision_bits if args.precision is None else args.precision
    report = verify_numeric_constants(spec, precision_bits=bits)
    emit(report, args.out, config)
    return _exit_for(report.status)


def merge_reports(reports: list[LemmaReport]) -> MergedReport:
    merged: dict[str, LemmaReport] = {}
    for report in reports:
        if report.lemma in merged:
            raise UsageError(f"Two reports for lemma {report.lemma!r}")
        merged[report.lemma] = report
    ordered = {lemma: merged[lemma] for lemma in sorted(merged)}
    status = "pass" if all(r.status == "pass" for r in ordered.values()) else "fail"
    return MergedReport(reports=ordered, status=status)


def handle_report(args: argparse.Namespace, config: RunConfig) -> int:
    merged = merge_reports([read_report(path) for path in args.merge])
    logger.info(f"Merged {len(merged.reports)} reports: {merged.status}")
    emit(merged, args.out, config)
    return _exit_for(merged.status)
