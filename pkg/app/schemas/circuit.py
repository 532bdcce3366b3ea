import math
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GateLayer(BaseModel):
    """
    One gate of the QFT staircase.

    Sites are 1-based; site 1 holds the most significant bit.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["hadamard", "controlled_phase"] = Field(..., description="Gate kind")
    site: Optional[int] = Field(None, ge=1, description="Hadamard site")
    control: Optional[int] = Field(None, ge=1, description="Controlled-phase control site")
    target: Optional[int] = Field(None, ge=1, description="Controlled-phase target site")
    k: Optional[int] = Field(None, ge=2, description="Phase angle is 2*pi/2^k")

    @model_validator(mode="after")
    def _check_fields(self) -> "GateLayer":
        if self.kind == "hadamard":
            if self.site is None:
                raise ValueError("hadamard layer needs a site")
        else:
            if self.control is None or self.target is None or self.k is None:
                raise ValueError("controlled_phase layer needs control, target and k")
            if self.control == self.target:
                raise ValueError("control and target must differ")
        return self

    @classmethod
    def hadamard(cls, site: int) -> "GateLayer":
        return cls(kind="hadamard", site=site)

    @classmethod
    def controlled_phase(cls, control: int, target: int, k: int) -> "GateLayer":
        return cls(kind="controlled_phase", control=control, target=target, k=k)

    @property
    def angle(self) -> float:
        """Phase angle in radians (0 for a Hadamard)"""
        if self.kind == "hadamard":
            return 0.0
        return 2.0 * math.pi / 2**self.k

    @property
    def sites(self) -> Tuple[int, ...]:
        if self.kind == "hadamard":
            return (self.site,)
        return (self.control, self.target)

    def __str__(self) -> str:
        if self.kind == "hadamard":
            return f"H({self.site})"
        return f"CP({self.control},{self.target},k={self.k})"
