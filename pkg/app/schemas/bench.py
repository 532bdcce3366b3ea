from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

# Mandated columns first, extras appended
CSV_COLUMNS: List[str] = [
    "method",
    "n",
    "chi_mpo",
    "chi_state_max",
    "build_time_s",
    "apply_time_s",
    "rel_error",
    "function",
    "timestamp",
    "status",
]


class BenchRecord(BaseModel):
    """One timing/accuracy measurement row"""

    method: Literal["sft", "fft"] = Field(..., description="Transform path")
    function: str = Field(..., description="Function label")
    n: int = Field(..., ge=1, description="Qubit count")
    chi_mpo: Optional[int] = Field(None, description="Max bond dimension of the QFT-MPO")
    chi_state_max: Optional[int] = Field(None, description="Max bond dimension of the output state")
    build_time_s: Optional[float] = Field(None, description="QFT-MPO construction time (seconds)")
    wall_time: Optional[float] = Field(None, description="Median transform time (seconds)")
    rel_error: Optional[float] = Field(None, description="Phase-adjusted relative l2 error")
    timestamp: str = Field(..., description="ISO-8601 UTC timestamp")
    status: str = Field("ok", description="'ok' or 'failed: <reason>'")

    @model_validator(mode="after")
    def _check_values(self) -> "BenchRecord":
        if self.ok and (self.wall_time is None or self.wall_time <= 0):
            raise ValueError("wall_time must be positive for a successful record")
        if self.rel_error is not None and self.rel_error < 0:
            raise ValueError("rel_error must be non-negative")
        return self

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_row(self) -> dict:
        """Row dictionary keyed by CSV_COLUMNS"""
        return {
            "method": self.method,
            "n": self.n,
            "chi_mpo": self.chi_mpo,
            "chi_state_max": self.chi_state_max,
            "build_time_s": self.build_time_s,
            "apply_time_s": self.wall_time,
            "rel_error": self.rel_error,
            "function": self.function,
            "timestamp": self.timestamp,
            "status": self.status,
        }
