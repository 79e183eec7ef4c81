"""Parameter models for smoothing runs and CLI invocations."""
import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from src.config import settings


class SmoothingParams(BaseModel):
    """Data steering the recursive smoothed cone metric."""

    model_config = {"frozen": True}

    xi: float = Field(..., gt=0.0, description="Chart excess")
    d: List[float] = Field(..., min_length=1, description="Widths d_2, d_3, ... of the forcing bands")
    r: float = Field(..., gt=0.0, description="Base radius")
    c: float = Field(..., gt=1.0, description="Width scale of B(varsigma; c)")
    varsigma: float = Field(..., gt=0.0, description="Width ratio")

    @model_validator(mode="after")
    def _check_data(self) -> "SmoothingParams":
        for i, d_i in enumerate(self.d, start=2):
            if d_i <= 4.0 + self.xi:
                raise ValueError(f"d_{i}={d_i} must exceed 4 + xi = {4.0 + self.xi}")
            if self.r <= 2.0 * d_i:
                raise ValueError(f"r={self.r} must exceed 2 d_{i} = {2.0 * d_i}")
        if self.c * self.varsigma >= math.exp(-(4.0 + self.xi)):
            raise ValueError(
                f"c * varsigma = {self.c * self.varsigma:.3e} must be below e^-(4+xi) = "
                f"{math.exp(-(4.0 + self.xi)):.3e}"
            )
        return self

    def width(self, i: int) -> float:
        """Return d_i (indexing starts at 2)."""
        if i < 2 or i - 2 >= len(self.d):
            raise IndexError(f"d_{i} not supplied (have d_2..d_{len(self.d) + 1})")
        return self.d[i - 2]

    @property
    def max_dimension(self) -> int:
        """Largest complex dimension m these widths support (needs d_{m+1})."""
        return len(self.d)


class RunConfig(BaseModel):
    """Resolved options for a single CLI run."""

    command: str = Field(..., description="Subcommand path, e.g. 'patches cover'")
    parameters: Dict[str, object] = Field(default_factory=dict, description="Command parameter flags")
    seed: int = Field(default_factory=lambda: settings.seed, description="Random seed")
    tol: Optional[float] = Field(default=None, description="Tolerance override")
    workers: int = Field(default_factory=lambda: settings.workers, ge=1, description="Worker pool size")
    out: Optional[str] = Field(default=None, description="Output path (stdout when omitted)")
    format: Literal["json", "csv"] = Field(
        default_factory=lambda: settings.output_format,
        description="Output format",
    )
