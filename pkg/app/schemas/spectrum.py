from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

NORMALIZATION_TOLERANCE = 1e-12


class SchmidtSpectrum(BaseModel):
    """Descending, l2-normalized Schmidt coefficients at one bipartition cut"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Qubit count")
    j: int = Field(..., ge=1, description="Cut position: qubits 1..j against j+1..n")
    sigmas: Tuple[float, ...] = Field(..., description="Schmidt coefficients, descending")
    operator: bool = Field(True, description="Operator (True) or state (False) decomposition")

    @model_validator(mode="after")
    def _check_invariants(self) -> "SchmidtSpectrum":
        if self.j > self.n - 1:
            raise ValueError(f"cut j={self.j} outside 1..{self.n - 1}")
        if not self.sigmas:
            raise ValueError("empty spectrum")
        values = np.asarray(self.sigmas)
        if np.any(values < 0):
            raise ValueError("negative Schmidt coefficient")
        if np.any(np.diff(values) > NORMALIZATION_TOLERANCE):
            raise ValueError("Schmidt coefficients are not descending")
        weight = float(np.sum(values**2))
        if abs(weight - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"spectrum not normalized: sum of squares = {weight!r}")
        base = 4 if self.operator else 2
        limit = base ** min(self.j, self.n - self.j)
        if len(values) > limit:
            raise ValueError(f"spectrum length {len(values)} exceeds {limit}")
        return self

    @classmethod
    def from_values(
        cls, values: Sequence[float], n: int, j: int, operator: bool = True
    ) -> "SchmidtSpectrum":
        """
        Build a spectrum from raw singular values.

        Values are sorted descending, clipped at zero and l2-normalized.

        Args:
            values: Raw singular values.
            n: Qubit count.
            j: Cut position.
            operator: Whether the values come from an operator decomposition.

        Returns:
            Normalized spectrum.
        """
        s = np.sort(np.clip(np.asarray(values, dtype=float), 0.0, None))[::-1]
        s = s / np.linalg.norm(s)
        return cls(n=n, j=j, sigmas=tuple(float(x) for x in s), operator=operator)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.sigmas)

    @property
    def rank(self) -> int:
        """Number of coefficients above 1e-14"""
        return int(np.count_nonzero(self.values > 1e-14))

    def padded(self, length: int) -> np.ndarray:
        """Coefficients padded with zeros (or cut) to ``length``"""
        out = np.zeros(length)
        m = min(length, len(self.sigmas))
        out[:m] = self.values[:m]
        return out


class FoldDiagnostics(BaseModel):
    """Spectra of the accumulated MPO after one zip-up fold"""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0, description="Fold index, in application order")
    label: str = Field(..., description="Folded gates, e.g. 'H(1)' or 'CP(1->2..4)'")
    span: Tuple[int, int] = Field(..., description="First and last site touched (1-based)")
    bond_dims: Tuple[int, ...] = Field(..., description="Bond dimensions after the fold")
    spectra: List[SchmidtSpectrum] = Field(default_factory=list, description="Spectrum at every cut")

    def spectrum_at(self, j: int) -> SchmidtSpectrum:
        return self.spectra[j - 1]
