"""Rank selection and truncated splits of site matrices."""

from typing import Optional, Tuple

import numpy as np

from app.core.config import settings
from app.linalg.dense import svd
from app.schemas.policy import TruncationPolicy


def tail_weights(s: np.ndarray) -> np.ndarray:
    """
    Relative discarded weight for every possible kept rank.

    Returns:
        Array ``tail`` of length len(s) + 1 with tail[r] = sum_{k>=r} s_k^2 / sum_k s_k^2.
    """
    w = np.asarray(s, dtype=float) ** 2
    total = w.sum()
    tail = np.zeros(len(w) + 1)
    if total > 0:
        tail[:-1] = np.cumsum(w[::-1])[::-1] / total
    return tail


def truncation_rank(s: np.ndarray, policy: TruncationPolicy, tie_tolerance: Optional[float] = None) -> int:
    """
    Smallest rank whose discarded relative squared weight is <= cutoff^2.

    The rank is capped by ``policy.max_chi``. Singular values equal to the
    last kept one within ``tie_tolerance`` (on the normalized scale) are kept
    as well unless the cap forbids it.
    Values at or below SVD_ZERO_TOLERANCE of the norm are treated as zero.

    Args:
        s: Descending singular values.
        policy: Truncation policy.
        tie_tolerance: Defaults to ``settings.TIE_TOLERANCE``.

    Returns:
        Number of singular values to keep, at least 1.
    """
    s = np.asarray(s, dtype=float)
    if len(s) == 0:
        return 0
    tie_tolerance = settings.TIE_TOLERANCE if tie_tolerance is None else tie_tolerance
    tail = tail_weights(s)
    allowed = policy.cutoff**2
    rank = int(np.argmax(tail[1:] <= allowed)) + 1
    if policy.max_chi is not None:
        rank = min(rank, policy.max_chi)

    norm = np.sqrt(np.sum(s**2))
    if norm == 0:
        return 1
    scaled = s / norm
    rank = min(rank, max(1, int(np.count_nonzero(scaled > settings.SVD_ZERO_TOLERANCE))))
    while rank < len(s) and (policy.max_chi is None or rank < policy.max_chi):
        if scaled[rank] > tie_tolerance and scaled[rank - 1] - scaled[rank] <= tie_tolerance:
            rank += 1
        else:
            break
    return rank


def split(
    matrix: np.ndarray, policy: TruncationPolicy
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """
    Truncated SVD of a matrix.

    Args:
        matrix: Matrix to split.
        policy: Truncation policy.

    Returns:
        (U, S, Vh, discarded) with the kept rank applied and ``discarded`` the
        relative squared weight removed.
    """
    u, s, vh = svd(matrix)
    rank = truncation_rank(s, policy)
    return u[:, :rank], s[:rank], vh[:rank, :], float(tail_weights(s)[rank])
