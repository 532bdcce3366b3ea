"""
Zip-up algorithms.

``apply_mpo_zipup`` applies an Mpo to an Mps; ``zipup_merge_layers`` folds
a list of gate layers into one Mpo. Both contract and split in a single
left-to-right pass under a relaxed policy, then enforce the requested
policy on a right-to-left truncation sweep over a left-canonical chain.
"""

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import opt_einsum as oe

from app.core.config import settings
from app.core.errors import MalformedLayerError, SiteMismatchError
from app.core.logger import get_logger
from app.schemas.circuit import GateLayer
from app.schemas.policy import TruncationPolicy
from app.schemas.spectrum import FoldDiagnostics, SchmidtSpectrum
from app.tn.canonical import _move_center, _right_sweep, canonicalize
from app.tn.chain import CanonicalForm, Mpo, Mps, mixed_at
from app.tn.truncation import split

logger = get_logger("tn.zipup")

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


def _relaxed(policy: TruncationPolicy, relax: Optional[Tuple[float, int]]) -> TruncationPolicy:
    cutoff_factor, chi_factor = relax or (settings.ZIPUP_RELAX_CUTOFF, settings.ZIPUP_RELAX_CHI)
    return policy.relaxed(cutoff_factor, chi_factor)


def apply_mpo_zipup(
    o: Mpo,
    m: Mps,
    policy: TruncationPolicy,
    relax: Optional[Tuple[float, int]] = None,
) -> Mps:
    """
    Apply an Mpo to an Mps with the zip-up algorithm.

    Args:
        o: Operator chain.
        m: State chain with the same site count.
        policy: Final truncation policy.
        relax: (cutoff factor, chi factor) loosening the policy on the
            contraction pass; defaults to the ZIPUP_RELAX_* settings.

    Returns:
        o|m>, right canonical with center 0.

    Raises:
        SiteMismatchError: When the site counts differ.
    """
    if o.n != m.n:
        raise SiteMismatchError(f"Mpo has {o.n} sites, Mps has {m.n}")
    loose = _relaxed(policy, relax)
    if m.canonical.kind != "right" or m.canonical.center != 0:
        m = canonicalize(m, "right")

    mats: List[np.ndarray] = []
    discarded = 0.0
    carry = np.ones((1, 1, 1), dtype=np.complex128)
    for site, (w, a) in enumerate(zip(o.tensors, m.tensors)):
        block = oe.contract("xab,apqc,bqd->xpcd", carry, w, a)
        x, p, c, d = block.shape
        if site == o.n - 1:
            mats.append(block.reshape(x, p, c * d))
            break
        u, s, vh, weight = split(block.reshape(x * p, c * d), loose)
        discarded += weight
        mats.append(u.reshape(x, p, len(s)))
        carry = (s[:, None] * vh).reshape(len(s), c, d)

    discarded += _right_sweep(mats, 0, o.n - 1, policy)
    result = Mps.from_site_matrices(
        mats,
        canonical=CanonicalForm(kind="right", center=0),
        discarded_weight=m.discarded_weight + discarded,
    )
    logger.debug(f"zip-up applied: n={o.n}, bond dims {result.bond_dims}, discarded {discarded:.3e}")
    return result


@dataclass
class _Fold:
    """One Hadamard or a run of controlled phases sharing a control; sites 0-based"""

    kind: str
    control: int
    angles: Dict[int, float] = field(default_factory=dict)

    @property
    def lo(self) -> int:
        return min([self.control, *self.angles])

    @property
    def hi(self) -> int:
        return max([self.control, *self.angles])

    @property
    def label(self) -> str:
        if self.kind == "hadamard":
            return f"H({self.control + 1})"
        targets = sorted(t + 1 for t in self.angles)
        if len(targets) == 1:
            return f"CP({self.control + 1}->{targets[0]})"
        return f"CP({self.control + 1}->{targets[0]}..{targets[-1]})"

    def site_tensor(self, site: int) -> np.ndarray:
        """
        Bond-2 staircase tensor (a, out, in, b) of a controlled-phase run.

        The bond carries the control bit x; the control site projects onto
        q = x, targets pick up exp(i*theta*x*q).
        """
        lo, hi = self.lo, self.hi
        w = np.zeros((1 if site == lo else 2, 2, 2, 1 if site == hi else 2), dtype=np.complex128)
        theta = self.angles.get(site, 0.0)
        for x in (0, 1):
            for q in (0, 1):
                if site == self.control:
                    value = 1.0 if x == q else 0.0
                else:
                    value = np.exp(1j * theta * x * q)
                w[0 if site == lo else x, q, q, 0 if site == hi else x] += value
        return w


def _group_folds(layers: Sequence[GateLayer], n: int) -> List[_Fold]:
    folds: List[_Fold] = []
    for layer in layers:
        for site in layer.sites:
            if not 1 <= site <= n:
                raise MalformedLayerError(f"layer {layer} touches site {site} outside 1..{n}")
        if layer.kind == "hadamard":
            folds.append(_Fold(kind="hadamard", control=layer.site - 1))
            continue
        control, target = layer.control - 1, layer.target - 1
        last = folds[-1] if folds else None
        if last is None or last.kind != "controlled_phase" or last.control != control:
            last = _Fold(kind="controlled_phase", control=control)
            folds.append(last)
        last.angles[target] = last.angles.get(target, 0.0) + layer.angle
    return folds


class LayerMerge(NamedTuple):
    """Merged operator plus one diagnostics record per fold"""

    mpo: Mpo
    folds: List[FoldDiagnostics]


def _initial_identity(n: int) -> List[np.ndarray]:
    """Identity site matrices, right canonical with center 0"""
    eye = np.eye(2, dtype=np.complex128).reshape(1, 4, 1)
    return [eye * np.sqrt(2.0) ** (n - 1)] + [eye / np.sqrt(2.0)] * (n - 1)


def _apply_hadamard(mats: List[np.ndarray], site: int) -> None:
    left, _, right = mats[site].shape
    t = mats[site].reshape(left, 2, 2, right)
    mats[site] = oe.contract("om,lmir->loir", HADAMARD, t).reshape(left, 4, right)


def _apply_staircase(
    mats: List[np.ndarray], fold: _Fold, loose: TruncationPolicy, policy: TruncationPolicy, spectra: Dict[int, np.ndarray]
) -> float:
    """Fold a controlled-phase run over its span; center must be at ``fold.lo`` and ends there."""
    lo, hi = fold.lo, fold.hi
    discarded = 0.0
    bond = mats[lo].shape[0]
    carry = np.eye(bond, dtype=np.complex128).reshape(bond, 1, bond)
    for site in range(lo, hi + 1):
        left, _, right = mats[site].shape
        a = mats[site].reshape(left, 2, 2, right)
        block = oe.contract("xal,aomb,lmir->xoibr", carry, fold.site_tensor(site), a)
        x, b = block.shape[0], block.shape[3]
        if site == hi:
            mats[site] = block.reshape(x, 4, right)
            break
        u, s, vh, weight = split(block.reshape(x * 4, b * right), loose)
        discarded += weight
        mats[site] = u.reshape(x, 4, len(s))
        carry = (s[:, None] * vh).reshape(len(s), b, right)
    return discarded + _right_sweep(mats, lo, hi, policy, spectra)


def zipup_merge_layers(
    layers: Sequence[GateLayer],
    policy: TruncationPolicy,
    n: Optional[int] = None,
    record_spectra: bool = True,
) -> LayerMerge:
    """
    Fold gate layers, in application order, into one Mpo.

    Each Hadamard is its own fold. A maximal run of consecutive
    controlled-phase layers with the same control is one fold, applied as a
    bond-2 staircase over the sites it spans. The accumulated Mpo is
    truncated with ``policy`` after every fold.

    Args:
        layers: Gate layers; the first one acts first.
        policy: Truncation policy applied after every fold.
        n: Site count; defaults to the largest site any layer touches.
        record_spectra: Record per-fold spectra at every cut.

    Returns:
        LayerMerge with the operator and the per-fold diagnostics.

    Raises:
        MalformedLayerError: For an empty layer list without ``n`` or a
            layer touching a site outside 1..n.
    """
    if n is None:
        if not layers:
            raise MalformedLayerError("cannot infer the site count from an empty layer list")
        n = max(max(layer.sites) for layer in layers)
    if n < 1:
        raise MalformedLayerError(f"site count must be >= 1, got {n}")
    folds = _group_folds(layers, n)
    loose = _relaxed(policy, None)

    mats = _initial_identity(n)
    form = CanonicalForm(kind="right", center=0)
    current: Dict[int, np.ndarray] = {j: np.ones(1) for j in range(1, n)}
    diagnostics: List[FoldDiagnostics] = []
    discarded = 0.0
    for index, fold in enumerate(folds):
        if fold.kind == "hadamard":
            _apply_hadamard(mats, fold.control)
        else:
            _move_center(mats, form, fold.lo)
            updated: Dict[int, np.ndarray] = {}
            discarded += _apply_staircase(mats, fold, loose, policy, updated)
            current.update(updated)
            form = mixed_at(fold.lo)
        if record_spectra:
            diagnostics.append(
                FoldDiagnostics(
                    index=index,
                    label=fold.label,
                    span=(fold.lo + 1, fold.hi + 1),
                    bond_dims=tuple([1] + [m.shape[2] for m in mats]),
                    spectra=[SchmidtSpectrum.from_values(current[j], n=n, j=j) for j in range(1, n)],
                )
            )

    mpo = Mpo.from_site_matrices(mats, canonical=form, discarded_weight=discarded)
    logger.info(
        f"merged {len(layers)} layers in {len(folds)} folds: n={n}, bond dims max {mpo.max_bond}, "
        f"discarded {discarded:.3e}"
    )
    return LayerMerge(mpo=mpo, folds=diagnostics)
