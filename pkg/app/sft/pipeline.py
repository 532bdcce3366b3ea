"""
The superfast Fourier transform: the compressed QFT-MPO applied to an Mps.

With ``reverse_output`` the result uses F_n ordering and lines up index for
index with ``app.linalg.dense.fft``.
"""

from typing import Optional

import numpy as np

from app.core.errors import NumericalError, SiteMismatchError, SizeLimitError
from app.core.logger import get_logger
from app.qft.mpo import mpo_cache
from app.schemas.policy import SftOptions
from app.tn.canonical import reverse_sites
from app.tn.chain import Mpo, Mps
from app.tn.zipup import apply_mpo_zipup

logger = get_logger("sft")


def sft(state: Mps, opts: Optional[SftOptions] = None, mpo: Optional[Mpo] = None) -> Mps:
    """
    Fourier transform of an Mps.

    Args:
        state: Input state.
        opts: Build and apply policies; defaults to SftOptions().
        mpo: Prebuilt QFT-MPO; taken from the process cache when omitted.

    Returns:
        F_n|state> (or Q_n|state> without ``reverse_output``).
        Its ``discarded_weight`` counts the apply-side truncation only.
        Weight dropped while building a truncated MPO is not included, so
        the output norm can drift from the input norm by more than it.

    Raises:
        SiteMismatchError: When ``mpo`` has a different site count.
    """
    opts = opts or SftOptions()
    if mpo is None:
        mpo = mpo_cache.get(state.n, opts.mpo_policy)
    if mpo.n != state.n:
        raise SiteMismatchError(f"QFT-MPO has {mpo.n} sites, state has {state.n}")
    out = apply_mpo_zipup(mpo, state, opts.apply_policy)
    return reverse_sites(out) if opts.reverse_output else out


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    """
    || a/|a| - exp(i phi) b/|b| || minimized over the global phase phi.

    Raises:
        SizeLimitError: For vectors of different lengths.
        NumericalError: When either vector is zero.
    """
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.shape != b.shape:
        raise SizeLimitError(f"length mismatch: {a.size} vs {b.size}")
    norm_a, norm_b = np.linalg.norm(a), np.linalg.norm(b)
    if norm_a == 0 or norm_b == 0:
        raise NumericalError("relative error of a zero vector")
    a_hat, b_hat = a / norm_a, b / norm_b
    overlap = np.vdot(b_hat, a_hat)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a_hat - phase * b_hat))


def fft_reference(v: np.ndarray) -> np.ndarray:
    """numpy's FFT under the +i, 1/sqrt(N) convention, an independent check of ``fft``"""
    v = np.asarray(v, dtype=np.complex128)
    return np.fft.ifft(v) * np.sqrt(v.size)
