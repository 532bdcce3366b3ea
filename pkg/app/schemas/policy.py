from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class TruncationPolicy(BaseModel):
    """Bond truncation policy"""

    model_config = ConfigDict(frozen=True)

    cutoff: float = Field(
        0.0,
        ge=0.0,
        lt=1.0,
        description="Relative discarded weight tolerance: discarded sum of squared singular values <= cutoff^2 of the total",
    )
    max_chi: Optional[int] = Field(None, ge=1, description="Hard cap on the kept rank")

    def relaxed(self, cutoff_factor: float, chi_factor: int) -> "TruncationPolicy":
        """
        Looser policy used on the zip-up pass.

        Args:
            cutoff_factor: The cutoff is divided by this factor.
            chi_factor: max_chi, when set, is multiplied by this factor.

        Returns:
            Relaxed policy.
        """
        return TruncationPolicy(
            cutoff=self.cutoff / cutoff_factor,
            max_chi=None if self.max_chi is None else self.max_chi * chi_factor,
        )

    @property
    def is_exact(self) -> bool:
        return self.cutoff == 0.0 and self.max_chi is None


EXACT = TruncationPolicy()


class SftOptions(BaseModel):
    """Options for the superfast Fourier transform"""

    model_config = ConfigDict(frozen=True)

    mpo_policy: TruncationPolicy = Field(
        default_factory=lambda: TruncationPolicy(cutoff=1e-10, max_chi=16),
        description="Policy for building the QFT-MPO",
    )
    apply_policy: TruncationPolicy = Field(
        default_factory=lambda: TruncationPolicy(cutoff=1e-10),
        description="Policy for the MPO-MPS application",
    )
    reverse_output: bool = Field(True, description="Emit F_n ordering (bit-reversed sites)")
