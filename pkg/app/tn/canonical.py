"""
Canonical forms, Schmidt spectra, truncation and chain arithmetic.

The private helpers operate in place on lists of (left, d, right) site
matrices; the public functions wrap them and return new chains.
"""

from typing import Dict, List, Literal, Optional, Tuple, TypeVar

import numpy as np
import opt_einsum as oe

from app.core.errors import CutRangeError, SiteMismatchError
from app.core.logger import get_logger
from app.linalg.dense import singular_values, svd
from app.schemas.policy import TruncationPolicy
from app.schemas.spectrum import SchmidtSpectrum
from app.tn.chain import CanonicalForm, Mpo, TensorChain, mixed_at
from app.tn.truncation import split, tail_weights, truncation_rank

logger = get_logger("tn.canonical")

Chain = TypeVar("Chain", bound=TensorChain)


def _left_orthogonalize(mats: List[np.ndarray], site: int) -> None:
    """QR of site into a left isometry, R absorbed into site + 1"""
    left, d, right = mats[site].shape
    q, r = np.linalg.qr(mats[site].reshape(left * d, right))
    mats[site] = q.reshape(left, d, q.shape[1])
    nxt = mats[site + 1]
    mats[site + 1] = (r @ nxt.reshape(nxt.shape[0], -1)).reshape(r.shape[0], nxt.shape[1], nxt.shape[2])


def _right_orthogonalize(mats: List[np.ndarray], site: int) -> None:
    """LQ of site into a right isometry, L absorbed into site - 1"""
    left, d, right = mats[site].shape
    q, r = np.linalg.qr(mats[site].reshape(left, d * right).conj().T)
    mats[site] = q.conj().T.reshape(q.shape[1], d, right)
    prev = mats[site - 1]
    mats[site - 1] = (prev.reshape(-1, prev.shape[2]) @ r.conj().T).reshape(prev.shape[0], prev.shape[1], r.shape[0])


def _move_center(mats: List[np.ndarray], form: CanonicalForm, center: int) -> CanonicalForm:
    """
    Bring the site matrices to mixed canonical form at ``center``.

    Isometries already promised by ``form`` are not recomputed.
    """
    n = len(mats)
    for site in range(form.left_orthogonal_upto(), center):
        _left_orthogonalize(mats, site)
    for site in range(min(form.right_orthogonal_from(n), n) - 1, center, -1):
        _right_orthogonalize(mats, site)
    return mixed_at(center)


def _right_sweep(
    mats: List[np.ndarray],
    lo: int,
    hi: int,
    policy: TruncationPolicy,
    spectra: Optional[Dict[int, np.ndarray]] = None,
) -> float:
    """
    Truncating sweep from ``hi`` down to ``lo``.

    Expects the center at ``hi``; leaves it at ``lo``. The kept singular
    values at the bond between sites s-1 and s are stored under cut s.

    Returns:
        Sum of the relative discarded weights.
    """
    discarded = 0.0
    for site in range(hi, lo, -1):
        left, d, right = mats[site].shape
        u, s, vh = svd(mats[site].reshape(left, d * right))
        rank = truncation_rank(s, policy)
        weight = float(tail_weights(s)[rank])
        u, s, vh = u[:, :rank], s[:rank], vh[:rank, :]
        if spectra is not None:
            spectra[site] = s
        discarded += weight
        mats[site] = vh.reshape(len(s), d, right)
        prev = mats[site - 1]
        mats[site - 1] = (prev.reshape(-1, left) @ (u * s)).reshape(prev.shape[0], prev.shape[1], len(s))
    return discarded


def move_center(chain: Chain, center: int) -> Chain:
    """Mixed canonical form with orthogonality center at site ``center`` (0-based)"""
    if not 0 <= center < chain.n:
        raise CutRangeError(f"center {center} outside 0..{chain.n - 1}")
    if chain.canonical.kind == "mixed" and chain.canonical.center == center:
        return chain
    mats = chain.site_matrices()
    form = _move_center(mats, chain.canonical, center)
    return chain.replace(mats, form)


def canonicalize(chain: Chain, direction: Literal["left", "right"] = "left") -> Chain:
    """
    QR sweep installing isometries.

    Args:
        chain: Mps or Mpo.
        direction: "left" makes sites 0..n-2 left isometries, "right" makes
            sites 1..n-1 right isometries.

    Returns:
        Chain representing the same object, with the canonical flag set.
    """
    mats = chain.site_matrices()
    if direction == "left":
        _move_center(mats, chain.canonical, chain.n - 1)
        form = CanonicalForm(kind="left", center=chain.n - 1)
    elif direction == "right":
        _move_center(mats, chain.canonical, 0)
        form = CanonicalForm(kind="right", center=0)
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    return chain.replace(mats, form)


def _check_cut(chain: TensorChain, j: int) -> None:
    if not 1 <= j <= chain.n - 1:
        raise CutRangeError(f"cut j={j} outside 1..{chain.n - 1}")


def schmidt_spectrum_at(chain: TensorChain, j: int) -> SchmidtSpectrum:
    """
    Schmidt spectrum across the cut between qubits 1..j and j+1..n.

    For an Mpo this is the operator Schmidt spectrum.

    Args:
        chain: Mps or Mpo.
        j: Cut position, 1 <= j <= n-1.

    Returns:
        Normalized spectrum.
    """
    _check_cut(chain, j)
    centered = move_center(chain, j - 1)
    mat = centered.site_matrices()[j - 1]
    values = singular_values(mat.reshape(-1, mat.shape[2]))
    return SchmidtSpectrum.from_values(values, n=chain.n, j=j, operator=isinstance(chain, Mpo))


def truncate_bond(chain: Chain, j: int, policy: TruncationPolicy) -> Tuple[Chain, float]:
    """
    Truncate the bond at cut j.

    The chain is first brought to mixed form at site j-1 (a no-op when the
    flag already says so); the orthogonality center ends at site j.

    Returns:
        (truncated chain, relative discarded squared weight).
    """
    _check_cut(chain, j)
    mats = chain.site_matrices()
    _move_center(mats, chain.canonical, j - 1)
    left, d, right = mats[j - 1].shape
    u, s, vh, weight = split(mats[j - 1].reshape(left * d, right), policy)
    mats[j - 1] = u.reshape(left, d, len(s))
    nxt = mats[j]
    mats[j] = ((s[:, None] * vh) @ nxt.reshape(right, -1)).reshape(len(s), nxt.shape[1], nxt.shape[2])
    logger.debug(f"truncate_bond j={j}: kept {len(s)} of {min(left * d, right)}, discarded {weight:.3e}")
    return chain.replace(mats, mixed_at(j), extra_weight=weight), weight


def compress(chain: Chain, policy: TruncationPolicy) -> Chain:
    """
    Left canonicalization followed by a right-to-left truncating sweep.

    Returns:
        Chain in right canonical form (center 0).
    """
    mats = chain.site_matrices()
    _move_center(mats, chain.canonical, chain.n - 1)
    discarded = _right_sweep(mats, 0, chain.n - 1, policy)
    return chain.replace(mats, CanonicalForm(kind="right", center=0), extra_weight=discarded)


def reverse_sites(chain: Chain) -> Chain:
    """
    Chain with the site order reversed.

    For an Mps this represents the bit-reversed vector. No truncation takes place.
    """
    mats = [m.transpose(2, 1, 0) for m in reversed(chain.site_matrices())]
    return type(chain).from_site_matrices(
        mats, canonical=chain.canonical.mirrored(chain.n), discarded_weight=chain.discarded_weight
    )


def norm(chain: TensorChain) -> float:
    """l2 (Frobenius for an Mpo) norm"""
    if chain.canonical.kind == "mixed":
        return float(np.linalg.norm(chain.tensors[chain.canonical.center]))
    centered = move_center(chain, 0)
    return float(np.linalg.norm(centered.tensors[0]))


def inner(a: TensorChain, b: TensorChain) -> complex:
    """<a|b>, conjugate-linear in ``a``"""
    if a.n != b.n:
        raise SiteMismatchError(f"site counts differ: {a.n} vs {b.n}")
    env = np.ones((1, 1), dtype=np.complex128)
    for x, y in zip(a.site_matrices(), b.site_matrices()):
        env = oe.contract("ab,adc,bde->ce", env, x.conj(), y)
    return complex(env[0, 0])


def scale(chain: Chain, factor: complex) -> Chain:
    """Chain multiplied by a scalar, applied at the orthogonality center when there is one"""
    mats = chain.site_matrices()
    site = chain.canonical.center if chain.canonical.center is not None else 0
    mats[site] = mats[site] * factor
    return chain.replace(mats, chain.canonical)


def chain_add(a: Chain, b: Chain) -> Chain:
    """Sum of two chains of the same type, with direct-sum bonds"""
    if a.n != b.n:
        raise SiteMismatchError(f"site counts differ: {a.n} vs {b.n}")
    if type(a) is not type(b):
        raise TypeError(f"cannot add {type(a).__name__} and {type(b).__name__}")
    if a.n == 1:
        return a.replace([a.site_matrices()[0] + b.site_matrices()[0]], CanonicalForm())
    mats = []
    for site, (x, y) in enumerate(zip(a.site_matrices(), b.site_matrices())):
        if site == 0:
            mats.append(np.concatenate([x, y], axis=2))
        elif site == a.n - 1:
            mats.append(np.concatenate([x, y], axis=0))
        else:
            block = np.zeros((x.shape[0] + y.shape[0], x.shape[1], x.shape[2] + y.shape[2]), dtype=np.complex128)
            block[: x.shape[0], :, : x.shape[2]] = x
            block[x.shape[0] :, :, x.shape[2] :] = y
            mats.append(block)
    return type(a).from_site_matrices(mats)


def difference_norm(a: TensorChain, b: TensorChain) -> float:
    """
    ||a - b|| computed from the canonicalized direct-sum chain.

    Accurate to roughly machine precision times ||a|| + ||b||, unlike the
    inner-product expansion.
    """
    return norm(chain_add(a, scale(b, -1.0)))
