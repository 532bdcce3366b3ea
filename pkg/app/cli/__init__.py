"""
Command-line interface.

    sfqft spectrum --n 8 --j 4 --operator qn
    sfqft bound --kmax 32
    sfqft build-mpo --n 64 --chi 16 --out qft64.sqtn
    sfqft sft --function plane-wave:k=3.5 --n 20 --chi 16
    sfqft compare --function gaussian:mu=0.5,s=0.1 --n 16 --chi 16
    sfqft sweep --nmin 12 --nmax 24 --nstep 4 --chis 8 16 --out bench.csv
    sfqft verify --nmax 10

Function specs use ``kind[:key=value[,key=value]]`` with kinds constant,
delta:p=, plane-wave:k=, gaussian:mu=,s=, step:e= and sampled:id=.
"""

import argparse
import sys
from typing import List, Optional

from app.cli.commands import HANDLERS
from app.core.config import settings
from app.core.errors import FunctionSpecError, SuperfastQftError
from app.core.logger import get_logger, setup_logging
from app.functions.registry import sampled_functions

logger = get_logger("cli")

FUNCTION_HELP = (
    "function spec kind[:key=value,...]: constant, delta:p=INT, plane-wave:k=FLOAT, "
    "gaussian:mu=FLOAT,s=FLOAT, step:e=FLOAT, sampled:id=NAME"
)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _cutoff(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"cutoff must lie in [0, 1), got {text}")
    return value


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="Output path (default: standard output)")


def _add_policy(parser: argparse.ArgumentParser, chi_default: Optional[int]) -> None:
    parser.add_argument("--chi", type=_positive_int, default=chi_default, help="QFT-MPO bond dimension cap")
    parser.add_argument(
        "--cutoff", type=_cutoff, default=settings.DEFAULT_CUTOFF, help="Relative truncation cutoff (default: %(default)g)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfqft",
        description="Compressed QFT as a matrix product operator, and the superfast Fourier transform.",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: LOG_LEVEL setting)",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("spectrum", help="Operator Schmidt spectrum at one cut, as CSV k,sigma,bound")
    p.add_argument("--n", type=_positive_int, required=True, help="Qubit count")
    p.add_argument("--j", type=_positive_int, required=True, help="Cut position, 1 <= j <= n-1")
    p.add_argument("--operator", choices=["qn", "fn"], default="qn", help="Q_n or the full DFT F_n")
    _add_policy(p, None)
    _add_out(p)

    p = sub.add_parser("bound", help="Schmidt decay bound as CSV k,bound")
    p.add_argument("--kmax", type=int, required=True, help="Largest k (>= 2)")
    _add_out(p)

    p = sub.add_parser("build-mpo", help="Build the QFT-MPO and write it in binary form")
    p.add_argument("--n", type=_positive_int, required=True, help="Qubit count")
    _add_policy(p, settings.DEFAULT_CHI)
    p.add_argument("--report", default=None, help="Also write per-fold intermediate spectra as CSV to this path")
    _add_out(p)

    p = sub.add_parser("sft", help="Superfast Fourier transform of one function")
    p.add_argument("--function", required=True, help=FUNCTION_HELP + ", or 'random'")
    p.add_argument("--n", type=_positive_int, required=True, help="Qubit count")
    _add_policy(p, settings.DEFAULT_CHI)
    p.add_argument("--no-reverse", action="store_true", help="Keep Q_n output order (skip the site reversal)")
    p.add_argument("--format", choices=["csv", "binary"], default="csv", help="CSV index,real,imag or binary Mps")
    p.add_argument("--state-chi", type=_positive_int, default=4, help="Bond dimension of the 'random' input")
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Seed for the 'random' input")
    _add_out(p)

    p = sub.add_parser("compare", help="SFT against the radix-2 FFT on one function")
    p.add_argument("--function", required=True, help=FUNCTION_HELP)
    p.add_argument("--n", type=_positive_int, required=True, help="Qubit count")
    _add_policy(p, settings.DEFAULT_CHI)
    p.add_argument("--repeats", type=_positive_int, default=settings.TIMING_REPEATS, help="Timed runs per path")
    _add_out(p)

    p = sub.add_parser("sweep", help="Benchmark table over functions, n and chi")
    p.add_argument(
        "--functions",
        nargs="+",
        default=None,
        help="Function specs (default: the benchmark function file); sampled ids: "
        + ", ".join(sampled_functions.names()),
    )
    p.add_argument("--nmin", type=_positive_int, required=True, help="Smallest qubit count")
    p.add_argument("--nmax", type=_positive_int, required=True, help="Largest qubit count")
    p.add_argument("--nstep", type=_positive_int, default=1, help="Qubit count step")
    p.add_argument("--chis", type=_positive_int, nargs="+", default=[settings.DEFAULT_CHI], help="QFT-MPO bond caps")
    p.add_argument(
        "--cutoff", type=_cutoff, default=settings.DEFAULT_CUTOFF, help="Relative truncation cutoff (default: %(default)g)"
    )
    p.add_argument("--repeats", type=_positive_int, default=settings.TIMING_REPEATS, help="Timed runs per path")
    _add_out(p)

    p = sub.add_parser("verify", help="Dense-oracle invariant suite, pass/fail table")
    p.add_argument("--nmax", type=_positive_int, default=settings.VERIFY_MAX_QUBITS, help="Largest qubit count")
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Seed for random test states")
    p.add_argument("--json", default=None, help="Also write a JSON summary to this path")
    _add_out(p)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one subcommand.

    Returns:
        0 on success, 1 on numerical or validation failure, 2 on usage errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(args.log_level)
    try:
        return HANDLERS[args.command](args)
    except FunctionSpecError as exc:
        print(f"sfqft {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (SuperfastQftError, ValueError) as exc:
        logger.error(f"{args.command} failed: {exc}")
        print(f"sfqft {args.command}: {exc}", file=sys.stderr)
        return 1
