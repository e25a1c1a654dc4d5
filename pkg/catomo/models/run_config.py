from typing import Literal, Optional

from pydantic import Field, model_validator

from ..settings import NumericsSettings
from .base_model import BaseModel
from .tomogram import CatSource, QuadraturePoint


GRID_COMMANDS = ("tomogram", "conditional")


class RunConfig(BaseModel):
    """One CLI invocation, validated."""

    subcommand: Literal["tomogram", "conditional", "qcurve", "entropy", "validate"]
    alpha_sq: float = Field(default=10.0, ge=0)
    delta: float = 0.0
    h: Literal[0, 1] = 0
    x2: Optional[float] = None
    theta2: Optional[float] = None
    state: Literal["cat", "coherent"] = "cat"
    theta1_steps: int = Field(default=128, ge=2)
    x1_min: float = -8.0
    x1_max: float = 8.0
    x1_steps: int = Field(default=321, ge=2)
    phi_steps: int = Field(default=256, ge=2)
    dim: Optional[int] = Field(default=None, ge=1)
    out_path: Optional[str] = None
    format: Literal["csv", "pgm"] = "csv"
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_invocation(self):
        if not self.x1_min < self.x1_max:
            raise ValueError(f"--x1-min ({self.x1_min}) must be below --x1-max ({self.x1_max})")
        if self.subcommand == "conditional" and (self.x2 is None or self.theta2 is None):
            raise ValueError("conditional needs both --x2 and --theta2 (radians)")
        if self.subcommand == "qcurve" and self.x2 is None:
            raise ValueError("qcurve needs --x2")
        if self.format == "pgm" and self.subcommand not in GRID_COMMANDS:
            raise ValueError(f"--format pgm only applies to {', '.join(GRID_COMMANDS)}")
        if self.h == 1 and self.alpha_sq == 0.0:
            raise ValueError("--h 1 needs --alpha-sq > 0 (the odd cat state is empty)")
        return self

    @classmethod
    def from_args(cls, args, settings: NumericsSettings) -> "RunConfig":
        """Merge parsed flags with settings defaults; unset flags fall back to settings."""
        values = {
            key: value
            for key, value in vars(args).items()
            if key in cls.model_fields and value is not None
        }
        for key in ("theta1_steps", "x1_min", "x1_max", "x1_steps", "phi_steps", "workers"):
            values.setdefault(key, getattr(settings, key))
        return cls(**values)

    @property
    def source(self) -> CatSource:
        return CatSource(alpha_sq=self.alpha_sq, delta=self.delta, h=self.h)

    @property
    def conditioning(self) -> QuadraturePoint:
        return QuadraturePoint(X=self.x2, theta=self.theta2)

    def default_out_path(self) -> str:
        if self.out_path:
            return self.out_path
        extension = "pgm" if self.format == "pgm" else "csv"
        return f"{self.subcommand}.{extension}"
