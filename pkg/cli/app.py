"""Argument parsing and dispatch"""
import argparse
import logging
import re
import sys
from typing import Optional

from fit.models import MAX_DEGREE, Transform
from ingest.models import IncomeKind
from utils.logger import setup_logging

from .commands import EXIT_FAILURE, cmd_figures, cmd_fit, cmd_roundtrip, cmd_sample, cmd_sweep
from .config import settings

logger = logging.getLogger(__name__)

COEFFICIENT_FLAGS = ("--p1", "--p2", "--p3")
_NEGATIVE_FLOAT = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed '{text}'") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _attach_negative_coefficients(argv: list[str]) -> list[str]:
    """Join `--p2 -4.8e-4` into `--p2=-4.8e-4`; argparse before 3.13 takes the value for a flag"""
    joined: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in COEFFICIENT_FLAGS and i + 1 < len(argv) and _NEGATIVE_FLOAT.match(argv[i + 1]):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycdf",
        description="Polynomial complementary-CDF fits of income and wealth deciles",
    )
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    transforms = [t.value for t in Transform]

    fit = subparsers.add_parser("fit", help="fit every series of a decile CSV")
    fit.add_argument("--input", required=True, help="decile CSV file")
    fit.add_argument("--degree", type=int, default=settings.default_degree,
                     help=f"polynomial degree, 1..{MAX_DEGREE}")
    fit.add_argument("--transform", choices=transforms, default=Transform.LINEAR.value)
    fit.add_argument("--output", required=True, help="report file (JSON Lines)")
    fit.add_argument("--plot", default=None, help="directory for per-series plot TSV files")
    fit.add_argument("--cpi", default=None, help="CPI CSV (year,index) to deflate nominal values")
    fit.add_argument("--base-year", type=int, default=None, help="CPI base year")
    fit.set_defaults(handler=cmd_fit)

    roundtrip = subparsers.add_parser("roundtrip", help="verify published coefficients by round-trip")
    roundtrip.add_argument("--fixtures", default=None,
                           help="coefficient CSV or fit report (.jsonl); default: shipped table")
    roundtrip.add_argument("--tolerance", type=float, default=settings.roundtrip_tolerance)
    roundtrip.set_defaults(handler=cmd_roundtrip)

    sample = subparsers.add_parser("sample", help="draw a synthetic population from a quadratic")
    sample.add_argument("--p1", type=float, required=True, help="x^2 coefficient (negative values: --p1=-1e-7)")
    sample.add_argument("--p2", type=float, required=True, help="x coefficient (negative values: --p2=-4.848e-4)")
    sample.add_argument("--p3", type=float, required=True, help="constant (negative values: --p3=-2.5)")
    sample.add_argument("--n", type=_positive_int, required=True, help="number of incomes")
    sample.add_argument("--seed", type=_seed, default=settings.sample_seed)
    sample.add_argument("--p-low", type=float, default=settings.sample_p_low)
    sample.add_argument("--p-high", type=float, default=settings.sample_p_high)
    sample.add_argument("--country", default="synthetic")
    sample.add_argument("--year", type=int, default=0)
    sample.add_argument("--currency", default="units")
    sample.add_argument("--income-kind", choices=[k.value for k in IncomeKind],
                        default=IncomeKind.DISPOSABLE.value)
    sample.add_argument("--output", required=True, help="incomes file, one value per line")
    sample.set_defaults(handler=cmd_sample)

    figures = subparsers.add_parser("figures", help="emit plot data for the five illustrated fits")
    figures.add_argument("--output-dir", required=True)
    figures.set_defaults(handler=cmd_figures)

    sweep = subparsers.add_parser("sweep", help="compare R2 across polynomial degrees")
    sweep.add_argument("--input", required=True, help="decile CSV file")
    sweep.add_argument("--max-degree", type=int, default=MAX_DEGREE)
    sweep.add_argument("--transform", choices=transforms, default=Transform.LINEAR.value)
    sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """
    Run one subcommand.

    Returns 0 on success, 1 on validation or domain failure; argparse
    exits with 2 on usage errors.
    """
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_attach_negative_coefficients(list(argv)))
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        logger.error(f"❌ {args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
