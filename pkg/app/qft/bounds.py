"""
Schmidt-decay bound for Q_n, entanglement entropy and truncation-error
envelopes.

The bound on the k-th (0-based, k >= 2) normalized operator Schmidt
coefficient of Q_n at any cut is

    (1/sqrt(k)) * exp(-((2k + 1)/2) * ln((4k + 4) / (e * pi)))

with the natural logarithm. It depends on neither n nor the cut.
"""

import math
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from app.core.errors import BoundDomainError, SpectrumValidationError
from app.schemas.spectrum import SchmidtSpectrum

SpectrumLike = Union[SchmidtSpectrum, Sequence[float], np.ndarray]


def theorem_bound(k: int) -> float:
    """
    Upper bound on the k-th Schmidt coefficient of Q_n.

    Raises:
        BoundDomainError: For k < 2.
    """
    if k < 2:
        raise BoundDomainError(f"the decay bound holds for k >= 2, got k={k}")
    return math.exp(-((2 * k + 1) / 2) * math.log((4 * k + 4) / (math.e * math.pi))) / math.sqrt(k)


def bound_curve(kmax: int) -> pd.DataFrame:
    """Table with columns k and bound for k = 2..kmax"""
    if kmax < 2:
        raise BoundDomainError(f"kmax must be >= 2, got {kmax}")
    ks = list(range(2, kmax + 1))
    return pd.DataFrame({"k": ks, "bound": [theorem_bound(k) for k in ks]})


def _values(spectrum: SpectrumLike) -> np.ndarray:
    if isinstance(spectrum, SchmidtSpectrum):
        return spectrum.values
    return np.asarray(spectrum, dtype=float)


def operator_entanglement_entropy(spectrum: SpectrumLike) -> float:
    """
    -sum sigma_k^2 ln sigma_k^2 in nats, with 0 ln 0 = 0.

    Raises:
        SpectrumValidationError: When the squares do not sum to 1 within 1e-8
            or a value is negative.
    """
    s = _values(spectrum)
    if np.any(s < 0):
        raise SpectrumValidationError("negative Schmidt coefficient")
    p = s**2
    total = float(p.sum())
    if abs(total - 1.0) > 1e-8:
        raise SpectrumValidationError(f"spectrum not normalized: sum of squares = {total!r}")
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def truncation_tail_norm(spectrum: SpectrumLike, chi: int) -> float:
    """sqrt(sum_{k >= chi} sigma_k^2), the relative Frobenius error of keeping chi values"""
    s = _values(spectrum)
    return float(np.sqrt(np.sum(s[chi:] ** 2)))


def error_envelope(n: int, chi: int) -> float:
    """n * exp(-chi * ln(chi / 3)) / sqrt(chi), the error shape of a bond-chi QFT-MPO"""
    return n * math.exp(-chi * math.log(chi / 3)) / math.sqrt(chi)


def fit_envelope_constant(cells: Iterable[Tuple[int, int, float]]) -> Tuple[float, pd.DataFrame]:
    """
    Smallest constant C with error <= C * error_envelope(n, chi) on every cell.

    Args:
        cells: (n, chi, measured error) triples.

    Returns:
        (C, table of n, chi, error, envelope and ratio per cell).
    """
    rows = []
    for n, chi, error in cells:
        envelope = error_envelope(n, chi)
        rows.append({"n": n, "chi": chi, "error": error, "envelope": envelope, "ratio": error / envelope})
    table = pd.DataFrame(rows, columns=["n", "chi", "error", "envelope", "ratio"])
    constant = float(table["ratio"].max()) if len(table) else 0.0
    return constant, table


def coefficient_spread(spectra: Iterable[SpectrumLike], kmax: int) -> np.ndarray:
    """
    max - min of sigma_k over a family of spectra, for k = 0..kmax-1.

    Shorter spectra count as zero-padded.
    """
    rows = []
    for spectrum in spectra:
        s = _values(spectrum)[:kmax]
        rows.append(np.pad(s, (0, kmax - len(s))))
    if not rows:
        raise SpectrumValidationError("no spectra to compare")
    table = np.vstack(rows)
    return table.max(axis=0) - table.min(axis=0)
