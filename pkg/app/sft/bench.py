"""
SFT against the repository's own radix-2 FFT.

Transform timings exclude the QFT-MPO build, which is reported in its own
column so both amortized and one-shot costs can be derived from the table.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.errors import SuperfastQftError
from app.core.logger import get_logger
from app.functions.encoders import encode, parse_function_spec, reference_vector
from app.linalg.dense import fft
from app.qft.mpo import mpo_cache
from app.schemas.bench import CSV_COLUMNS, BenchRecord
from app.schemas.function import FunctionSpec
from app.schemas.policy import SftOptions, TruncationPolicy
from app.sft.pipeline import fft_reference, relative_error, sft
from app.tn.convert import mps_to_vector
from app.utils.common import get_current_timestamp, median_time

logger = get_logger("bench")


def compare(
    spec: FunctionSpec, opts: Optional[SftOptions] = None, repeats: Optional[int] = None
) -> Tuple[BenchRecord, Optional[BenchRecord]]:
    """
    Time SFT and FFT on the same function and measure their agreement.

    Args:
        spec: Benchmark function.
        opts: SFT options.
        repeats: Timed runs per path; defaults to TIMING_REPEATS.

    Returns:
        (sft record, fft record). Above DECODE_MAX_QUBITS the FFT side is
        skipped: the fft record is None and the sft error stays empty.
    """
    opts = opts or SftOptions()
    n = spec.n
    state = encode(spec, opts.apply_policy)
    mpo = mpo_cache.get(n, opts.mpo_policy)
    build_time = mpo_cache.build_time(n, opts.mpo_policy)

    out = sft(state, opts, mpo=mpo)
    sft_time = median_time(lambda: sft(state, opts, mpo=mpo), repeats)
    timestamp = get_current_timestamp()

    if n > settings.DECODE_MAX_QUBITS:
        logger.info(f"{spec.label} n={n}: FFT side skipped above n={settings.DECODE_MAX_QUBITS}")
        record = BenchRecord(
            method="sft",
            function=spec.label,
            n=n,
            chi_mpo=mpo.max_bond,
            chi_state_max=out.max_bond,
            build_time_s=build_time,
            wall_time=sft_time,
            timestamp=timestamp,
        )
        return record, None

    v = reference_vector(spec)
    expected = fft(v)
    fft_time = median_time(lambda: fft(v), repeats)
    sft_record = BenchRecord(
        method="sft",
        function=spec.label,
        n=n,
        chi_mpo=mpo.max_bond,
        chi_state_max=out.max_bond,
        build_time_s=build_time,
        wall_time=sft_time,
        rel_error=relative_error(mps_to_vector(out), expected),
        timestamp=timestamp,
    )
    fft_record = BenchRecord(
        method="fft",
        function=spec.label,
        n=n,
        wall_time=fft_time,
        rel_error=relative_error(expected, fft_reference(v)),
        timestamp=timestamp,
    )
    logger.info(
        f"{spec.label} n={n} chi={opts.mpo_policy.max_chi}: sft {sft_time:.3e}s, fft {fft_time:.3e}s, "
        f"error {sft_record.rel_error:.2e}"
    )
    return sft_record, fft_record


def time_apply(spec: FunctionSpec, opts: Optional[SftOptions] = None, repeats: Optional[int] = None) -> float:
    """
    Median seconds of one SFT application, MPO build and decoding excluded.

    Args:
        spec: Benchmark function.
        opts: SFT options.
        repeats: Timed runs; defaults to TIMING_REPEATS.

    Returns:
        Median wall time of ``sft`` on the encoded state.
    """
    opts = opts or SftOptions()
    state = encode(spec, opts.apply_policy)
    mpo = mpo_cache.get(spec.n, opts.mpo_policy)
    return median_time(lambda: sft(state, opts, mpo=mpo), repeats)


def benchmark_sweep(
    specs: Sequence[str],
    n_range: Sequence[int],
    chi_list: Sequence[int],
    cutoff: Optional[float] = None,
    repeats: Optional[int] = None,
) -> List[BenchRecord]:
    """
    Run ``compare`` on every (function, n, chi) cell, sequentially.

    A failing cell is logged and recorded with a ``failed: <reason>`` status;
    the sweep continues.

    Args:
        specs: Function specs in CLI grammar.
        n_range: Qubit counts.
        chi_list: QFT-MPO bond dimension caps.
        cutoff: Truncation cutoff for both policies; defaults to DEFAULT_CUTOFF.
        repeats: Timed runs per cell.

    Returns:
        All records, in cell order.
    """
    cutoff = settings.DEFAULT_CUTOFF if cutoff is None else cutoff
    records: List[BenchRecord] = []
    cells = [(text, n, chi) for text in specs for n in n_range for chi in chi_list]
    logger.info(f"Starting sweep over {len(cells)} cells")
    for text, n, chi in cells:
        opts = SftOptions(
            mpo_policy=TruncationPolicy(cutoff=cutoff, max_chi=chi),
            apply_policy=TruncationPolicy(cutoff=cutoff),
        )
        try:
            sft_record, fft_record = compare(parse_function_spec(text, n), opts, repeats)
        except SuperfastQftError as exc:
            logger.warning(f"Sweep cell {text} n={n} chi={chi} failed: {exc}")
            records.append(
                BenchRecord(
                    method="sft",
                    function=text,
                    n=n,
                    timestamp=get_current_timestamp(),
                    status=f"failed: {exc}",
                )
            )
            continue
        records.append(sft_record)
        if fft_record is not None:
            records.append(fft_record)
    logger.info(f"Sweep finished: {sum(r.ok for r in records)} ok, {sum(not r.ok for r in records)} failed")
    return records


def records_to_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """Record table with the CSV column order"""
    return pd.DataFrame([r.to_row() for r in records], columns=CSV_COLUMNS)


def write_records_csv(
    records: Sequence[BenchRecord], out: Optional[Union[str, Path, TextIO]] = None
) -> Optional[str]:
    """
    Write records as CSV with 17 significant digits.

    Returns:
        The CSV text when ``out`` is None, otherwise None.
    """
    return records_to_frame(records).to_csv(out, index=False, float_format="%.17g")


def fit_linear_scaling(ns: Sequence[float], times: Sequence[float]) -> Dict[str, float]:
    """
    Least-squares fit t = a*n + b.

    Returns:
        Dictionary with slope, intercept and r2.
    """
    x = np.asarray(ns, dtype=float)
    y = np.asarray(times, dtype=float)
    if x.size < 2:
        raise ValueError("a linear fit needs at least two points")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(residual**2)) / total if total > 0 else 1.0
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2}
