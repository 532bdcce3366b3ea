"""Superfast Fourier transform and its FFT benchmark."""

from app.sft.bench import (
    benchmark_sweep,
    compare,
    fit_linear_scaling,
    records_to_frame,
    time_apply,
    write_records_csv,
)
from app.sft.pipeline import fft_reference, relative_error, sft

__all__ = [
    "benchmark_sweep",
    "compare",
    "fft_reference",
    "fit_linear_scaling",
    "records_to_frame",
    "relative_error",
    "sft",
    "time_apply",
    "write_records_csv",
]
