"""
Dense linear algebra, the radix-2 FFT baseline and the brute-force
operator Schmidt oracle.

Conventions used across the package:

* A basis index q has bits q_1..q_n with q_1 the most significant bit,
  q = sum_i q_i 2^(n-i), so the binary fraction 0.q_1...q_n equals q / 2^n.
* Fourier matrices use the +i exponent and 1/sqrt(N) normalization:
  F[q, q'] = exp(+2*pi*i*q*q'/N) / sqrt(N).
* Dense operators are indexed [row, column] = [output, input].
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg
from tenacity import RetryError, Retrying, before_sleep_log, retry_if_exception_type, stop_after_attempt

from app.core.config import settings
from app.core.errors import CutRangeError, NumericalError, SizeLimitError
from app.core.logger import get_logger
from app.schemas.spectrum import SchmidtSpectrum

logger = get_logger("dense")

Matrix = Union["DenseUnitary", np.ndarray]


class DenseUnitary:
    """
    Square complex matrix on the 2^n-dimensional qubit space.

    The entry array is made read-only so values can be shared between threads.
    """

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: np.ndarray):
        entries = np.asarray(entries, dtype=np.complex128)
        dim = 1 << n
        if entries.shape != (dim, dim):
            raise SizeLimitError(f"expected a {dim}x{dim} matrix, got {entries.shape}")
        entries.setflags(write=False)
        self.n = n
        self.entries = entries

    @property
    def dim(self) -> int:
        return 1 << self.n

    def unitarity_error(self) -> float:
        """Max-abs deviation of U U^dagger from the identity"""
        product = self.entries @ self.entries.conj().T
        return float(np.max(np.abs(product - np.eye(self.dim))))

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"DenseUnitary(n={self.n})"


def check_dense_size(n: int) -> None:
    """Raise SizeLimitError unless 1 <= n <= DENSE_MAX_QUBITS"""
    if not 1 <= n <= settings.DENSE_MAX_QUBITS:
        raise SizeLimitError(f"dense operations need 1 <= n <= {settings.DENSE_MAX_QUBITS}, got n={n}")


def qubit_count(length: int) -> int:
    """
    Number of qubits for a vector length.

    Raises:
        SizeLimitError: When ``length`` is not a power of two.
    """
    if length < 1 or length & (length - 1):
        raise SizeLimitError(f"length {length} is not a power of two")
    return length.bit_length() - 1


def phase_matrix(numerators: np.ndarray, n: int) -> np.ndarray:
    """
    exp(2*pi*i*m/2^n) with the angle reduced mod 2*pi in integer arithmetic.

    Args:
        numerators: Integer array of phase numerators m.
        n: Denominator exponent.

    Returns:
        Complex array of unit-modulus phases.
    """
    reduced = np.mod(np.asarray(numerators, dtype=np.int64), np.int64(1) << n)
    return np.exp((2j * np.pi / (1 << n)) * reduced)


def dft_matrix(n: int) -> DenseUnitary:
    """
    Unitary DFT matrix F_n with entries exp(+2*pi*i*q*q'/2^n) / sqrt(2^n).

    Args:
        n: Qubit count.

    Returns:
        The DFT as a DenseUnitary.
    """
    check_dense_size(n)
    dim = 1 << n
    q = np.arange(dim, dtype=np.int64)
    numerators = np.multiply.outer(q, q)
    np.mod(numerators, dim, out=numerators)
    return DenseUnitary(n, phase_matrix(numerators, n) / np.sqrt(dim))


def bit_reversal_permutation(n: int) -> np.ndarray:
    """
    Permutation mapping the index with bits q_1..q_n to the index with bits q_n..q_1.

    Args:
        n: Qubit count.

    Returns:
        Integer array ``perm`` with ``perm[q]`` the reversed index.
    """
    if n < 0:
        raise SizeLimitError(f"n must be non-negative, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    rev = np.zeros_like(idx)
    for b in range(n):
        rev |= ((idx >> b) & 1) << (n - 1 - b)
    return rev


def bit_reversal_matrix(n: int) -> np.ndarray:
    """Dense permutation matrix P_R with P_R|q> = |rev(q)>"""
    check_dense_size(n)
    dim = 1 << n
    perm = bit_reversal_permutation(n)
    p = np.zeros((dim, dim), dtype=np.complex128)
    p[perm, np.arange(dim)] = 1.0
    return p


def fft(v: np.ndarray) -> np.ndarray:
    """
    Iterative radix-2 decimation-in-time FFT.

    Same conventions as ``dft_matrix``: +i exponent and 1/sqrt(N) scaling.

    Args:
        v: Complex vector whose length is a power of two.

    Returns:
        dft_matrix(n) @ v, computed in O(N log N).
    """
    x = np.asarray(v, dtype=np.complex128)
    if x.ndim != 1:
        raise SizeLimitError(f"fft expects a vector, got shape {x.shape}")
    n = qubit_count(x.size)
    dim = x.size
    x = x[bit_reversal_permutation(n)]
    for stage in range(1, n + 1):
        m = 1 << stage
        half = m >> 1
        # e^{+2 pi i k / m} = e^{+2 pi i k (N/m) / N}
        twiddle = phase_matrix(np.arange(half, dtype=np.int64) * (dim // m), n)
        blocks = x.reshape(-1, 2, half)
        even = blocks[:, 0, :]
        odd = blocks[:, 1, :] * twiddle
        out = np.empty_like(blocks)
        out[:, 0, :] = even + odd
        out[:, 1, :] = even - odd
        x = out.reshape(dim)
    return x / np.sqrt(dim)


def _decompose(a: np.ndarray, attempt: int, compute_uv: bool):
    if attempt == 1:
        return np.linalg.svd(a, full_matrices=False, compute_uv=compute_uv)
    return scipy.linalg.svd(
        a, full_matrices=False, compute_uv=compute_uv, lapack_driver="gesvd", check_finite=False
    )


def _svd_with_retry(a: np.ndarray, compute_uv: bool):
    if not np.all(np.isfinite(a)):
        raise NumericalError("SVD input has non-finite entries", attempts=0)
    result = None
    try:
        for attempt in Retrying(
            stop=stop_after_attempt(settings.SVD_MAX_ATTEMPTS),
            retry=retry_if_exception_type(np.linalg.LinAlgError),
            before_sleep=before_sleep_log(logger, logging.WARNING),
        ):
            with attempt:
                result = _decompose(a, attempt.retry_state.attempt_number, compute_uv)
    except RetryError as exc:
        raise NumericalError(
            f"SVD of a {a.shape[0]}x{a.shape[1]} matrix did not converge",
            attempts=exc.last_attempt.attempt_number,
        ) from exc
    return result


def svd(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Thin singular value decomposition m = U diag(S) Vh.

    Falls back from numpy's divide-and-conquer driver to LAPACK gesvd on
    non-convergence.

    Args:
        m: Complex matrix with finite entries.

    Returns:
        (U, S, Vh) with S non-negative and descending.

    Raises:
        NumericalError: When every driver fails, with the attempt count.
    """
    return _svd_with_retry(np.asarray(m), compute_uv=True)


def singular_values(m: np.ndarray, aspect_ratio: Optional[float] = None) -> np.ndarray:
    """
    Singular values only.

    When one side is more than ``aspect_ratio`` times the other, the long
    side is first reduced by a QR factorization and the small triangular
    factor is decomposed instead.
    """
    a = np.asarray(m)
    aspect_ratio = settings.QR_ASPECT_RATIO if aspect_ratio is None else aspect_ratio
    rows, cols = a.shape
    small = min(rows, cols)
    if max(rows, cols) > aspect_ratio * small:
        tall = a if rows >= cols else a.conj().T
        r = scipy.linalg.qr(tall, mode="r", check_finite=False)[0]
        a = r[:small, :]
    return _svd_with_retry(a, compute_uv=False)


def operator_schmidt(u: Matrix, j: int) -> SchmidtSpectrum:
    """
    Operator Schmidt spectrum of a dense operator at cut j.

    The matrix is regrouped into (row bits 1..j, column bits 1..j) against
    (row bits j+1..n, column bits j+1..n) and its singular values are
    l2-normalized, which absorbs the sqrt(N) prefactor.

    Args:
        u: Dense 2^n x 2^n operator.
        j: Cut position, 1 <= j <= n-1.

    Returns:
        The normalized spectrum.
    """
    a = np.asarray(u)
    n = qubit_count(a.shape[0])
    if a.shape != (1 << n, 1 << n):
        raise SizeLimitError(f"operator must be square, got {a.shape}")
    if not 1 <= j <= n - 1:
        raise CutRangeError(f"cut j={j} outside 1..{n - 1}")
    axes = list(range(j)) + list(range(n, n + j)) + list(range(j, n)) + list(range(n + j, 2 * n))
    regrouped = a.reshape((2,) * (2 * n)).transpose(axes).reshape(4**j, 4 ** (n - j))
    return SchmidtSpectrum.from_values(singular_values(regrouped), n=n, j=j)


def frobenius_relative_error(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_F / ||b||_F"""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))
