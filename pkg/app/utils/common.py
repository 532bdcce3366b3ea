import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from app.core.config import settings


def get_current_timestamp() -> str:
    """
    Get current timestamp.

    Returns:
        Current UTC time in ISO-8601 form, seconds precision.
    """
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def median_time(fn: Callable[[], object], repeats: Optional[int] = None, warmup: bool = True) -> float:
    """
    Median wall time of a callable.

    Args:
        fn: Zero-argument callable to time.
        repeats: Number of timed runs; defaults to TIMING_REPEATS.
        warmup: Run once untimed first.

    Returns:
        Median duration in seconds.
    """
    repeats = settings.TIMING_REPEATS if repeats is None else repeats
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    if warmup:
        fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def write_output(data: Union[str, bytes], out: Optional[Union[str, Path]] = None) -> None:
    """
    Write an artifact to a file, or to stdout when ``out`` is None or "-".

    Args:
        data: Text or binary payload.
        out: Destination path.
    """
    if out is None or str(out) == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
            sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data, encoding="utf-8")
