from typing import Literal, Optional, Tuple

from pydantic import Field, model_validator

from .base_model import BaseModel


class Ridge(BaseModel):
    x_position: float
    height: float = Field(ge=0)


class RidgeSet(BaseModel):
    """Ridges found in every theta column of a grid."""

    per_theta: Tuple[Tuple[Ridge, ...], ...]
    theta_axis: Tuple[float, ...]
    x_min: float
    x_max: float
    ridge_threshold: float = Field(gt=0, lt=1)

    @model_validator(mode="after")
    def _check_ridges(self):
        if len(self.per_theta) != len(self.theta_axis):
            raise ValueError("one ridge list per theta column is required")
        for ridges in self.per_theta:
            for ridge in ridges:
                if not self.x_min <= ridge.x_position <= self.x_max:
                    raise ValueError(f"ridge at {ridge.x_position} outside the x axis")
        return self

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(len(ridges) for ridges in self.per_theta)


class StrandVerdict(BaseModel):
    label: Literal["single", "double"]
    fraction_double: float = Field(ge=0, le=1)
    crossing_thetas: Tuple[float, ...] = ()
    decision_level: float = 0.25

    @model_validator(mode="after")
    def _check_label(self):
        expected = "double" if self.fraction_double >= self.decision_level else "single"
        if self.label != expected:
            raise ValueError(
                f"label {self.label!r} inconsistent with fraction_double {self.fraction_double}"
            )
        return self

    def _kv_items(self):
        items = super()._kv_items()
        items["crossings"] = len(self.crossing_thetas)
        return items


class NormalizationReport(BaseModel):
    max_column_error: float
    worst_theta: float
    columns: int


class OracleReport(BaseModel):
    """Worst pointwise gap between the closed-form and Fock-space tomograms."""

    alpha_sq: float
    h: int
    dim: int
    points_checked: int
    max_abs_diff: float
    x1: float
    theta1: float
    x2: float
    theta2: float


class ExponentReport(BaseModel):
    winner: Optional[Literal["derived", "printed"]]
    derived_max_diff: float
    printed_max_diff: float
    tolerance: float = 1e-8
