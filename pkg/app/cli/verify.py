"""
Dense-oracle invariant suite behind ``sfqft verify``.

Every check compares a fast or compressed path against brute-force dense
linear algebra for all n up to a cap and yields one row per (check, n).
"""

from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.errors import SizeLimitError
from app.core.logger import get_logger
from app.linalg.dense import bit_reversal_matrix, dft_matrix, fft, frobenius_relative_error, operator_schmidt
from app.qft.bounds import theorem_bound
from app.qft.circuit import build_qn_dense
from app.qft.mpo import mpo_cache
from app.schemas.policy import EXACT, SftOptions
from app.sft.pipeline import relative_error, sft
from app.tn.canonical import schmidt_spectrum_at
from app.tn.convert import mpo_to_dense, mps_to_vector, random_mps
from app.tn.zipup import apply_mpo_zipup

logger = get_logger("verify")

# Singular values at or below this are numerical zeros for the bound check
SPECTRUM_FLOOR = 1e-14


class CheckResult(NamedTuple):
    check: str
    n: int
    value: float
    tolerance: float
    passed: bool


def _check_dft_unitary(n: int, rng: np.random.Generator) -> CheckResult:
    value = dft_matrix(n).unitarity_error()
    return CheckResult("dft_unitary", n, value, 1e-12, value <= 1e-12)


def _check_fft(n: int, rng: np.random.Generator) -> CheckResult:
    f = np.asarray(dft_matrix(n))
    worst = 0.0
    for _ in range(5):
        v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        expected = f @ v
        worst = max(worst, float(np.linalg.norm(fft(v) - expected) / np.linalg.norm(expected)))
    return CheckResult("fft_vs_dft", n, worst, 1e-12, worst <= 1e-12)


def _check_decomposition(n: int, rng: np.random.Generator) -> CheckResult:
    value = frobenius_relative_error(bit_reversal_matrix(n) @ np.asarray(build_qn_dense(n)), np.asarray(dft_matrix(n)))
    return CheckResult("reversal_times_qn_is_fn", n, value, 1e-12, value <= 1e-12)


def _check_fn_uniform(n: int, rng: np.random.Generator) -> CheckResult:
    f = dft_matrix(n)
    spread = max(float(np.ptp(operator_schmidt(f, j).values)) for j in range(1, n))
    return CheckResult("fn_spectrum_uniform", n, spread, 1e-10, spread <= 1e-10)


def _check_theorem_bound(n: int, rng: np.random.Generator) -> CheckResult:
    q = build_qn_dense(n)
    worst = 0.0
    violations = 0
    for j in range(1, n):
        s = operator_schmidt(q, j).values
        for k in range(2, len(s)):
            if s[k] <= SPECTRUM_FLOOR:
                break
            ratio = s[k] / theorem_bound(k)
            worst = max(worst, ratio)
            violations += int(s[k] > theorem_bound(k))
    return CheckResult("schmidt_decay_bound", n, worst, 1.0, violations == 0)


def _check_mpo_exact(n: int, rng: np.random.Generator) -> CheckResult:
    value = frobenius_relative_error(mpo_to_dense(mpo_cache.get(n, EXACT)), np.asarray(build_qn_dense(n)))
    return CheckResult("mpo_equals_qn", n, value, 1e-12, value <= 1e-12)


def _check_mpo_spectra(n: int, rng: np.random.Generator) -> CheckResult:
    mpo = mpo_cache.get(n, EXACT)
    q = build_qn_dense(n)
    worst = 0.0
    for j in range(1, n):
        dense = operator_schmidt(q, j)
        chain = schmidt_spectrum_at(mpo, j)
        length = max(len(dense.sigmas), len(chain.sigmas))
        worst = max(worst, float(np.max(np.abs(dense.padded(length) - chain.padded(length)))))
    return CheckResult("mpo_spectra_match_dense", n, worst, 1e-10, worst <= 1e-10)


def _check_zipup(n: int, rng: np.random.Generator) -> CheckResult:
    mpo = mpo_cache.get(n, EXACT)
    q = np.asarray(build_qn_dense(n))
    worst = 0.0
    for _ in range(3):
        state = random_mps(n, 4, rng)
        v = mps_to_vector(state)
        out = mps_to_vector(apply_mpo_zipup(mpo, state, EXACT))
        worst = max(worst, float(np.linalg.norm(out - q @ v) / np.linalg.norm(v)))
    return CheckResult("zipup_exact", n, worst, 1e-11, worst <= 1e-11)


def _check_sft(n: int, rng: np.random.Generator) -> CheckResult:
    state = random_mps(n, 4, rng)
    value = relative_error(mps_to_vector(sft(state, SftOptions())), fft(mps_to_vector(state)))
    return CheckResult("sft_vs_fft", n, value, 1e-8, value <= 1e-8)


# Checks with the smallest n each one needs
CHECKS: Dict[str, tuple] = {
    "dft_unitary": (_check_dft_unitary, 1),
    "fft_vs_dft": (_check_fft, 1),
    "reversal_times_qn_is_fn": (_check_decomposition, 1),
    "fn_spectrum_uniform": (_check_fn_uniform, 2),
    "schmidt_decay_bound": (_check_theorem_bound, 2),
    "mpo_equals_qn": (_check_mpo_exact, 1),
    "mpo_spectra_match_dense": (_check_mpo_spectra, 2),
    "zipup_exact": (_check_zipup, 1),
    "sft_vs_fft": (_check_sft, 1),
}


def run_suite(nmax: int, seed: Optional[int] = None, checks: Optional[List[str]] = None) -> pd.DataFrame:
    """
    Run the invariant checks for n = 1..nmax.

    Args:
        nmax: Largest qubit count, at most DENSE_MPO_MAX_QUBITS.
        seed: Seed for the random test states; defaults to DEFAULT_SEED.
        checks: Subset of CHECKS to run; all when omitted.

    Returns:
        Table with columns check, n, value, tolerance, passed.
    """
    if not 1 <= nmax <= settings.DENSE_MPO_MAX_QUBITS:
        raise SizeLimitError(f"verify needs 1 <= nmax <= {settings.DENSE_MPO_MAX_QUBITS}, got {nmax}")
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    selected = checks or list(CHECKS)
    rows: List[CheckResult] = []
    for name in selected:
        check: Callable[[int, np.random.Generator], CheckResult]
        check, n_min = CHECKS[name]
        for n in range(n_min, nmax + 1):
            result = check(n, rng)
            if not result.passed:
                logger.warning(f"{name} failed at n={n}: value {result.value:.3e} > {result.tolerance:g}")
            rows.append(result)
        logger.info(f"{name}: checked n={n_min}..{nmax}")
    return pd.DataFrame(rows, columns=CheckResult._fields)
