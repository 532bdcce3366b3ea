"""
MPS/MPO data model.

Index convention, fixed for the whole package:

* Mps site tensor: (left bond, physical, right bond)
* Mpo site tensor: (left bond, physical out, physical in, right bond)

Site 0 carries qubit 1, the most significant bit. Boundary bonds have
dimension 1. Algorithms work on "site matrices" of shape (left, d, right)
where d = 2 for an Mps and d = 4 (out-major, in-minor) for an Mpo, so the
same canonicalization and truncation code serves both.
"""

from typing import ClassVar, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.core.errors import SizeLimitError

PHYSICAL_DIM = 2


class CanonicalForm(BaseModel):
    """
    Orthogonality bookkeeping of a chain.

    ``left``: sites < center are left isometries.
    ``right``: sites > center are right isometries.
    ``mixed``: both.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["none", "left", "right", "mixed"] = "none"
    center: Optional[int] = None

    def left_orthogonal_upto(self) -> int:
        """Number of leading sites guaranteed to be left isometries"""
        if self.kind in ("left", "mixed"):
            return self.center
        return 0

    def right_orthogonal_from(self, n: int) -> int:
        """First site of the trailing block guaranteed to be right isometries"""
        if self.kind in ("right", "mixed"):
            return self.center + 1
        return n

    def mirrored(self, n: int) -> "CanonicalForm":
        if self.kind == "none":
            return self
        kind = {"left": "right", "right": "left", "mixed": "mixed"}[self.kind]
        return CanonicalForm(kind=kind, center=n - 1 - self.center)


NOT_CANONICAL = CanonicalForm()


def mixed_at(center: int) -> CanonicalForm:
    return CanonicalForm(kind="mixed", center=center)


class TensorChain:
    """
    Open-boundary chain of site tensors.

    Values are immutable snapshots: tensors are stored read-only and every
    operation returns a new chain.
    """

    physical_legs: ClassVar[int] = 1

    __slots__ = ("tensors", "canonical", "discarded_weight")

    def __init__(
        self,
        tensors: Sequence[np.ndarray],
        canonical: CanonicalForm = NOT_CANONICAL,
        discarded_weight: float = 0.0,
    ):
        if len(tensors) == 0:
            raise SizeLimitError("a chain needs at least one site")
        rank = self.physical_legs + 2
        stored = []
        for site, t in enumerate(tensors):
            t = np.array(t, dtype=np.complex128, copy=True)
            if t.ndim != rank:
                raise ValueError(f"site {site}: expected a rank-{rank} tensor, got shape {t.shape}")
            if any(dim != PHYSICAL_DIM for dim in t.shape[1:-1]):
                raise ValueError(f"site {site}: physical dimensions must be 2, got shape {t.shape}")
            if site > 0 and stored[-1].shape[-1] != t.shape[0]:
                raise ValueError(
                    f"bond {site}: right dimension {stored[-1].shape[-1]} != left dimension {t.shape[0]}"
                )
            t.setflags(write=False)
            stored.append(t)
        if stored[0].shape[0] != 1 or stored[-1].shape[-1] != 1:
            raise ValueError("boundary bond dimensions must be 1")
        self.tensors: Tuple[np.ndarray, ...] = tuple(stored)
        self.canonical = canonical
        self.discarded_weight = float(discarded_weight)

    @property
    def n(self) -> int:
        return len(self.tensors)

    @property
    def bond_dims(self) -> List[int]:
        """n + 1 bond dimensions, boundaries included"""
        return [self.tensors[0].shape[0]] + [t.shape[-1] for t in self.tensors]

    @property
    def max_bond(self) -> int:
        return max(self.bond_dims)

    @property
    def site_dim(self) -> int:
        return PHYSICAL_DIM**self.physical_legs

    def site_matrices(self) -> List[np.ndarray]:
        """Site tensors reshaped to (left, d, right)"""
        return [t.reshape(t.shape[0], self.site_dim, t.shape[-1]) for t in self.tensors]

    @classmethod
    def from_site_matrices(
        cls,
        mats: Sequence[np.ndarray],
        canonical: CanonicalForm = NOT_CANONICAL,
        discarded_weight: float = 0.0,
    ) -> "TensorChain":
        shape = (PHYSICAL_DIM,) * cls.physical_legs
        tensors = [m.reshape((m.shape[0],) + shape + (m.shape[-1],)) for m in mats]
        return cls(tensors, canonical=canonical, discarded_weight=discarded_weight)

    def replace(
        self,
        mats: Sequence[np.ndarray],
        canonical: CanonicalForm,
        extra_weight: float = 0.0,
    ) -> "TensorChain":
        """New chain of the same type from site matrices, accumulating discarded weight"""
        return type(self).from_site_matrices(
            mats, canonical=canonical, discarded_weight=self.discarded_weight + extra_weight
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, bond_dims={self.bond_dims}, canonical={self.canonical.kind})"


class Mps(TensorChain):
    """Matrix product state encoding a length-2^n vector"""

    physical_legs = 1


class Mpo(TensorChain):
    """Matrix product operator encoding a 2^n x 2^n operator"""

    physical_legs = 2
