"""Conversions between dense vectors/matrices and chains, plus simple chain builders."""

from typing import Optional, Sequence

import numpy as np
import opt_einsum as oe

from app.core.config import settings
from app.core.errors import SizeLimitError
from app.linalg.dense import qubit_count
from app.schemas.policy import EXACT, TruncationPolicy
from app.tn.canonical import canonicalize, norm, scale
from app.tn.chain import CanonicalForm, Mpo, Mps
from app.tn.truncation import split


def vector_to_mps(v: np.ndarray, policy: TruncationPolicy = EXACT) -> Mps:
    """
    Tensor-train decomposition of a vector by a left-to-right SVD sweep.

    Args:
        v: Complex vector whose length is a power of two.
        policy: Truncation applied at every bond.

    Returns:
        Left-canonical Mps; site 0 carries the most significant bit.
    """
    x = np.asarray(v, dtype=np.complex128).reshape(-1)
    n = qubit_count(x.size)
    if n == 0:
        raise SizeLimitError("a vector of length 1 has no qubits")
    mats = []
    discarded = 0.0
    rest = x.reshape(1, -1)
    for _ in range(n - 1):
        left = rest.shape[0]
        u, s, vh, weight = split(rest.reshape(left * 2, -1), policy)
        discarded += weight
        mats.append(u.reshape(left, 2, len(s)))
        rest = s[:, None] * vh
    mats.append(rest.reshape(rest.shape[0], 2, 1))
    return Mps.from_site_matrices(
        mats, canonical=CanonicalForm(kind="left", center=n - 1), discarded_weight=discarded
    )


def mps_to_vector(m: Mps) -> np.ndarray:
    """Full contraction of an Mps into a length-2^n vector"""
    if m.n > settings.DECODE_MAX_QUBITS:
        raise SizeLimitError(f"decoding needs n <= {settings.DECODE_MAX_QUBITS}, got n={m.n}")
    out = m.tensors[0].reshape(2, -1)
    for t in m.tensors[1:]:
        out = (out @ t.reshape(t.shape[0], -1)).reshape(-1, t.shape[2])
    return out.reshape(-1)


def mpo_to_dense(o: Mpo) -> np.ndarray:
    """
    Full contraction of an Mpo into a 2^n x 2^n matrix indexed [out, in].

    Args:
        o: Operator chain with n <= DENSE_MPO_MAX_QUBITS.
    """
    if o.n > settings.DENSE_MPO_MAX_QUBITS:
        raise SizeLimitError(f"dense MPO contraction needs n <= {settings.DENSE_MPO_MAX_QUBITS}, got n={o.n}")
    out = o.tensors[0].reshape(2, 2, -1)
    for t in o.tensors[1:]:
        out = oe.contract("abl,lcdr->acbdr", out, t)
        rows, cols = out.shape[0] * out.shape[1], out.shape[2] * out.shape[3]
        out = out.reshape(rows, cols, out.shape[4])
    dim = 1 << o.n
    return out.reshape(dim, dim)


def identity_mpo(n: int) -> Mpo:
    """Bond-dimension-1 identity operator"""
    if n < 1:
        raise SizeLimitError(f"n must be >= 1, got {n}")
    eye = np.eye(2, dtype=np.complex128).reshape(1, 2, 2, 1)
    return Mpo([eye] * n)


def product_mps(factors: Sequence[np.ndarray]) -> Mps:
    """
    Product state from one 2-vector per qubit, most significant qubit first.

    Factors are used as given; normalize them for a unit-norm state.
    """
    tensors = [np.asarray(f, dtype=np.complex128).reshape(1, 2, 1) for f in factors]
    return Mps(tensors)


def product_mpo(gates: Sequence[np.ndarray]) -> Mpo:
    """Tensor product of single-qubit 2x2 operators, indexed [out, in]"""
    return Mpo([np.asarray(g, dtype=np.complex128).reshape(1, 2, 2, 1) for g in gates])


def basis_mps(n: int, index: int) -> Mps:
    """Computational basis state |index> as a bond-1 Mps"""
    if not 0 <= index < (1 << n):
        raise SizeLimitError(f"index {index} outside 0..{(1 << n) - 1}")
    factors = []
    for site in range(n):
        bit = (index >> (n - 1 - site)) & 1
        factors.append(np.eye(2)[bit])
    return product_mps(factors)


def random_mps(n: int, chi: int, rng: Optional[np.random.Generator] = None) -> Mps:
    """
    Unit-norm random Mps with bond dimensions min(chi, 2^j, 2^(n-j)).

    Args:
        n: Site count.
        chi: Bond dimension cap.
        rng: Random generator; seeded with DEFAULT_SEED when omitted.

    Returns:
        Normalized Mps.
    """
    if n < 1 or chi < 1:
        raise SizeLimitError(f"need n >= 1 and chi >= 1, got n={n}, chi={chi}")
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    bonds = [min(chi, 2 ** min(j, n - j)) for j in range(n + 1)]
    tensors = []
    for site in range(n):
        shape = (bonds[site], 2, bonds[site + 1])
        tensors.append(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    m = Mps(tensors)
    m = canonicalize(m, "right")
    return scale(m, 1.0 / norm(m))
