import threading
import time
from typing import Dict, List, Optional, Tuple

import pandas as pd

from app.core.errors import SizeLimitError
from app.core.logger import get_logger
from app.qft.circuit import qft_layers
from app.schemas.policy import TruncationPolicy
from app.schemas.spectrum import FoldDiagnostics
from app.tn.canonical import schmidt_spectrum_at
from app.tn.chain import Mpo
from app.tn.zipup import zipup_merge_layers

logger = get_logger("qft.mpo")


class QftMpoCache:
    """
    Built QFT-MPOs keyed on (n, policy).

    The operator does not depend on the input state, so one build serves
    every transform at the same size and policy.
    """

    def __init__(self) -> None:
        self._mpos: Dict[Tuple[int, TruncationPolicy], Mpo] = {}
        self._build_times: Dict[Tuple[int, TruncationPolicy], float] = {}
        self._lock = threading.Lock()

    def get(self, n: int, policy: TruncationPolicy) -> Mpo:
        """
        Cached Mpo for (n, policy), built on first use.

        Args:
            n: Qubit count.
            policy: Truncation policy of the build.

        Returns:
            The QFT-MPO.
        """
        key = (n, policy)
        with self._lock:
            cached = self._mpos.get(key)
        if cached is not None:
            return cached
        start = time.perf_counter()
        mpo = build_qft_mpo(n, policy)
        elapsed = time.perf_counter() - start
        with self._lock:
            self._mpos.setdefault(key, mpo)
            self._build_times.setdefault(key, elapsed)
            return self._mpos[key]

    def build_time(self, n: int, policy: TruncationPolicy) -> Optional[float]:
        """Seconds spent building the cached entry, None when absent"""
        with self._lock:
            return self._build_times.get((n, policy))

    def clear(self) -> None:
        with self._lock:
            self._mpos.clear()
            self._build_times.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._mpos)


def build_qft_mpo(n: int, policy: TruncationPolicy) -> Mpo:
    """
    Compressed Mpo of Q_n (not F_n: bit reversal is left to the state side).

    Args:
        n: Qubit count, n >= 1.
        policy: Truncation applied after every fold.

    Returns:
        The QFT-MPO.
    """
    start = time.perf_counter()
    merge = zipup_merge_layers(qft_layers(n), policy, n=n, record_spectra=False)
    logger.info(
        f"built QFT-MPO n={n} cutoff={policy.cutoff:g} max_chi={policy.max_chi}: "
        f"bond dims max {merge.mpo.max_bond} in {time.perf_counter() - start:.3f}s"
    )
    return merge.mpo


def intermediate_spectra_report(n: int, policy: TruncationPolicy) -> List[FoldDiagnostics]:
    """
    Per-fold spectra of the accumulating QFT-MPO.

    The last record describes the final operator.
    """
    if n < 2:
        raise SizeLimitError(f"spectra need n >= 2, got n={n}")
    return zipup_merge_layers(qft_layers(n), policy, n=n).folds


def intermediate_excess(folds: List[FoldDiagnostics], k: int, floor: float = 1e-14) -> float:
    """
    Largest ratio of an intermediate sigma_k to the final sigma_k at the same cut.

    Cuts where the final sigma_k is at or below ``floor`` are skipped.

    Returns:
        The ratio, 0.0 when no cut qualifies.
    """
    final = folds[-1]
    worst = 0.0
    for fold in folds:
        for spectrum in fold.spectra:
            reference = final.spectrum_at(spectrum.j).padded(k + 1)[k]
            if reference <= floor:
                continue
            worst = max(worst, float(spectrum.padded(k + 1)[k] / reference))
    return worst


def cut_profile(mpo: Mpo, kmax: int = 4) -> pd.DataFrame:
    """
    Leading Schmidt coefficients at every cut against the middle cut.

    Args:
        mpo: QFT-MPO with n >= 2.
        kmax: Number of leading coefficients per cut.

    Returns:
        Table with columns j, k, sigma and deviation, the absolute
        difference from sigma_k at cut n // 2.
    """
    if mpo.n < 2:
        raise SizeLimitError(f"cuts need n >= 2, got n={mpo.n}")
    middle = schmidt_spectrum_at(mpo, mpo.n // 2).padded(kmax)
    rows = []
    for j in range(1, mpo.n):
        sigmas = schmidt_spectrum_at(mpo, j).padded(kmax)
        for k in range(kmax):
            rows.append({"j": j, "k": k, "sigma": sigmas[k], "deviation": abs(sigmas[k] - middle[k])})
    return pd.DataFrame(rows, columns=["j", "k", "sigma", "deviation"])


# Create global QFT-MPO cache
mpo_cache = QftMpoCache()
