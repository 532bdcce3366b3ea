from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

FunctionKind = Literal["plane_wave", "delta", "constant", "gaussian", "step", "sampled"]


class FunctionSpec(BaseModel):
    """
    A benchmark function on the grid x = 0.q_1...q_n in [0, 1).

    Only the parameters of ``kind`` are meaningful; the others stay None.
    """

    model_config = ConfigDict(frozen=True)

    kind: FunctionKind = Field(..., description="Function family")
    n: int = Field(..., ge=1, description="Qubit count")
    k: Optional[float] = Field(None, description="Plane-wave frequency in cycles over the domain")
    p: Optional[int] = Field(None, description="Delta position (grid index)")
    mu: Optional[float] = Field(None, description="Gaussian center")
    s: Optional[float] = Field(None, description="Gaussian width")
    e: Optional[float] = Field(None, description="Step edge")
    expression: Optional[str] = Field(None, description="Sampled expression id")

    @model_validator(mode="after")
    def _check_parameters(self) -> "FunctionSpec":
        if self.kind == "plane_wave" and self.k is None:
            raise ValueError("plane_wave needs k")
        if self.kind == "delta":
            if self.p is None:
                raise ValueError("delta needs p")
            if not 0 <= self.p < 2**self.n:
                raise ValueError(f"delta position {self.p} outside 0..2^{self.n}-1")
        if self.kind == "gaussian":
            if self.mu is None or self.s is None:
                raise ValueError("gaussian needs mu and s")
            if not 0.0 <= self.mu < 1.0:
                raise ValueError("gaussian mu must lie in [0, 1)")
            if self.s <= 0.0:
                raise ValueError("gaussian width s must be positive")
        if self.kind == "step":
            if self.e is None:
                raise ValueError("step needs e")
            if not 0.0 <= self.e < 1.0:
                raise ValueError("step edge e must lie in [0, 1)")
        if self.kind == "sampled" and not self.expression:
            raise ValueError("sampled needs an expression id")
        return self

    def with_n(self, n: int) -> "FunctionSpec":
        """Same function on a different grid size"""
        return self.model_copy(update={"n": n})

    @property
    def label(self) -> str:
        """Compact text form, the same grammar the CLI parses"""
        if self.kind == "plane_wave":
            return f"plane-wave:k={self.k:g}"
        if self.kind == "delta":
            return f"delta:p={self.p}"
        if self.kind == "gaussian":
            return f"gaussian:mu={self.mu:g},s={self.s:g}"
        if self.kind == "step":
            return f"step:e={self.e:g}"
        if self.kind == "sampled":
            return f"sampled:id={self.expression}"
        return self.kind
