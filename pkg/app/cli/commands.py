"""
Subcommand handlers.

Each handler takes the parsed namespace, writes its artifact to ``--out``
(stdout by default) and returns the process exit code.
"""

import argparse
import json
from typing import Any, Callable, Dict

import numpy as np
import pandas as pd

from app.cli.verify import run_suite
from app.core.config import settings
from app.core.errors import CutRangeError, SizeLimitError
from app.core.logger import get_logger
from app.functions.encoders import encode, load_benchmark_functions, parse_function_spec
from app.linalg.dense import check_dense_size, dft_matrix, operator_schmidt
from app.qft.bounds import bound_curve, theorem_bound
from app.qft.circuit import build_qn_dense
from app.qft.mpo import build_qft_mpo, intermediate_spectra_report
from app.schemas.policy import SftOptions, TruncationPolicy
from app.sft.bench import benchmark_sweep, compare, write_records_csv
from app.sft.pipeline import sft
from app.tn.canonical import schmidt_spectrum_at
from app.tn.convert import mps_to_vector, random_mps
from app.tn.io import dumps
from app.utils.common import write_output

logger = get_logger("cli")

FLOAT_FORMAT = "%.17g"


def _to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT)


def _json_default(value: Any) -> Any:
    # numpy scalars in the check table
    return value.item() if hasattr(value, "item") else str(value)


def spectrum_command(args: argparse.Namespace) -> int:
    """Operator Schmidt spectrum of Q_n or F_n at one cut, with the decay bound"""
    if not 1 <= args.j <= args.n - 1:
        raise CutRangeError(f"cut j={args.j} outside 1..{args.n - 1}")
    if args.chi is not None:
        if args.operator != "qn":
            raise SizeLimitError("--chi reads the spectrum from the QFT-MPO, which only exists for qn")
        mpo = build_qft_mpo(args.n, TruncationPolicy(cutoff=args.cutoff, max_chi=args.chi))
        spectrum = schmidt_spectrum_at(mpo, args.j)
    else:
        check_dense_size(args.n)
        operator = build_qn_dense(args.n) if args.operator == "qn" else dft_matrix(args.n)
        spectrum = operator_schmidt(operator, args.j)
    ks = np.arange(len(spectrum.sigmas))
    frame = pd.DataFrame(
        {
            "k": ks,
            "sigma": spectrum.values,
            "bound": [theorem_bound(int(k)) if k >= 2 else np.nan for k in ks],
        }
    )
    write_output(_to_csv(frame), args.out)
    return 0


def bound_command(args: argparse.Namespace) -> int:
    """Decay bound for k = 2..kmax"""
    write_output(_to_csv(bound_curve(args.kmax)), args.out)
    return 0


def build_mpo_command(args: argparse.Namespace) -> int:
    """Build the QFT-MPO and write it in the binary chain format"""
    policy = TruncationPolicy(cutoff=args.cutoff, max_chi=args.chi)
    if args.report:
        folds = intermediate_spectra_report(args.n, policy)
        rows = [
            {"fold": f.index, "label": f.label, "j": s.j, "k": k, "sigma": sigma}
            for f in folds
            for s in f.spectra
            for k, sigma in enumerate(s.sigmas)
        ]
        write_output(_to_csv(pd.DataFrame(rows, columns=["fold", "label", "j", "k", "sigma"])), args.report)
    mpo = build_qft_mpo(args.n, policy)
    write_output(dumps(mpo), args.out)
    logger.info(f"QFT-MPO n={args.n}: bond dims {mpo.bond_dims}")
    return 0


def sft_command(args: argparse.Namespace) -> int:
    """Transform one function and write the output state"""
    if args.function == "random":
        state = random_mps(args.n, args.state_chi, np.random.default_rng(args.seed))
    else:
        state = encode(parse_function_spec(args.function, args.n), TruncationPolicy(cutoff=args.cutoff))
    opts = SftOptions(
        mpo_policy=TruncationPolicy(cutoff=args.cutoff, max_chi=args.chi),
        apply_policy=TruncationPolicy(cutoff=args.cutoff),
        reverse_output=not args.no_reverse,
    )
    out = sft(state, opts)
    if args.format == "binary":
        write_output(dumps(out), args.out)
        return 0
    if args.n > settings.DECODE_MAX_QUBITS:
        raise SizeLimitError(f"CSV output needs n <= {settings.DECODE_MAX_QUBITS}; use --format binary")
    v = mps_to_vector(out)
    frame = pd.DataFrame({"index": np.arange(v.size), "real": v.real, "imag": v.imag})
    write_output(_to_csv(frame), args.out)
    return 0


def compare_command(args: argparse.Namespace) -> int:
    """SFT against FFT on one function"""
    spec = parse_function_spec(args.function, args.n)
    opts = SftOptions(
        mpo_policy=TruncationPolicy(cutoff=args.cutoff, max_chi=args.chi),
        apply_policy=TruncationPolicy(cutoff=args.cutoff),
    )
    records = [r for r in compare(spec, opts, args.repeats) if r is not None]
    write_output(write_records_csv(records), args.out)
    return 0


def sweep_command(args: argparse.Namespace) -> int:
    """Benchmark table over functions, qubit counts and bond dimensions"""
    if args.nmin > args.nmax:
        raise SizeLimitError(f"--nmin {args.nmin} exceeds --nmax {args.nmax}")
    specs = args.functions or load_benchmark_functions()
    for text in specs:
        parse_function_spec(text, args.nmax)
    records = benchmark_sweep(specs, range(args.nmin, args.nmax + 1, args.nstep), args.chis, args.cutoff, args.repeats)
    write_output(write_records_csv(records), args.out)
    return 0


def verify_command(args: argparse.Namespace) -> int:
    """Run the dense-oracle suite; exit 1 when any check fails"""
    table = run_suite(args.nmax, args.seed)
    passed = bool(table["passed"].all())
    write_output(table.to_string(index=False) + "\n", args.out)
    if args.json:
        summary = {
            "passed": passed,
            "nmax": args.nmax,
            "seed": args.seed,
            "checks": table.to_dict(orient="records"),
        }
        write_output(json.dumps(summary, indent=2, default=_json_default) + "\n", args.json)
    logger.info(f"verify nmax={args.nmax}: {int(table['passed'].sum())}/{len(table)} checks passed")
    return 0 if passed else 1


HANDLERS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "spectrum": spectrum_command,
    "bound": bound_command,
    "build-mpo": build_mpo_command,
    "sft": sft_command,
    "compare": compare_command,
    "sweep": sweep_command,
    "verify": verify_command,
}
