import math
from typing import Literal, Optional

import numpy as np
from pydantic import Field, field_validator, model_validator
from scipy.integrate import trapezoid

from .base_model import BaseModel, frozen_array


TWO_PI = 2.0 * math.pi


def reduce_phase(value: float) -> float:
    """Map any real phase into [0, 2*pi)."""
    reduced = math.fmod(float(value), TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    # fmod of a value just below 2*pi can round up to 2*pi after the shift
    return 0.0 if reduced >= TWO_PI else reduced


def cat_norm_constant(alpha_sq: float, h: int) -> float:
    """N_h = 2^{-1/2} [1 + (-1)^h e^{-2|alpha|^2}]^{-1/2}."""
    if h == 0:
        bracket = 1.0 + math.exp(-2.0 * alpha_sq)
    else:
        bracket = -math.expm1(-2.0 * alpha_sq)
    return 1.0 / math.sqrt(2.0 * bracket)


class CatSource(BaseModel):
    """
    Input-port cat state N_h(|alpha> + e^{i pi h}|-alpha>), alpha = |alpha| e^{i delta}.
    The beam splitter output carries beta = alpha / sqrt(2) in each mode.
    """

    alpha_sq: float = Field(ge=0)
    delta: float = 0.0
    h: Literal[0, 1] = 0

    @field_validator("delta", mode="before")
    @classmethod
    def _reduce_delta(cls, value):
        return reduce_phase(value)

    @model_validator(mode="after")
    def _check_exists(self):
        if self.h == 1 and self.alpha_sq == 0.0:
            raise ValueError("the odd cat state does not exist for alpha_sq = 0")
        return self

    @property
    def alpha(self) -> complex:
        return math.sqrt(self.alpha_sq) * complex(math.cos(self.delta), math.sin(self.delta))

    @property
    def beta(self) -> complex:
        return self.alpha / math.sqrt(2.0)

    @property
    def beta_mag(self) -> float:
        return math.sqrt(self.alpha_sq / 2.0)

    @property
    def beta_sq(self) -> float:
        return self.alpha_sq / 2.0

    @property
    def norm_constant(self) -> float:
        return cat_norm_constant(self.alpha_sq, self.h)

    @property
    def overlap(self) -> float:
        """<beta|-beta> = e^{-2|beta|^2}."""
        return math.exp(-2.0 * self.beta_sq)


class QuadraturePoint(BaseModel):
    """Homodyne outcome X at local-oscillator phase theta."""

    X: float
    theta: float = 0.0

    @field_validator("theta", mode="before")
    @classmethod
    def _reduce_theta(cls, value):
        return reduce_phase(value)


class ConditionalState(BaseModel):
    """Mode-c state c_plus|beta> + c_minus|-beta> left by a mode-d quadrature outcome."""

    c_plus: complex
    c_minus: complex
    beta: complex
    norm: float = Field(ge=0)

    @model_validator(mode="after")
    def _check_norm(self):
        expected = math.sqrt(max(self.raw_norm_sq(), 0.0))
        if abs(self.norm - expected) > 1e-12 * max(1.0, expected):
            raise ValueError(f"norm {self.norm!r} does not match {expected!r}")
        return self

    def raw_norm_sq(self) -> float:
        overlap = math.exp(-2.0 * abs(self.beta) ** 2)
        cross = (self.c_plus.conjugate() * self.c_minus).real * overlap
        return abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2 + 2.0 * cross

    @property
    def weights(self) -> tuple:
        """Normalized (|c_plus|^2, |c_minus|^2) / norm^2."""
        norm_sq = self.norm**2
        return abs(self.c_plus) ** 2 / norm_sq, abs(self.c_minus) ** 2 / norm_sq


class TomogramGrid(BaseModel):
    """
    Samples of omega over (theta, X). `values[i, j]` belongs to theta_axis[i]
    and x_axis[j]; a "column" is the X-profile at one theta.
    """

    theta_axis: np.ndarray
    x_axis: np.ndarray
    values: np.ndarray
    normalized: bool = False
    kind: str = "conditional"
    source: Optional[CatSource] = None
    conditioning: Optional[QuadraturePoint] = None

    @field_validator("theta_axis", "x_axis", mode="before")
    @classmethod
    def _freeze_axis(cls, value, info):
        arr = frozen_array(value, float, 1, info.field_name)
        if arr.size > 1 and np.any(np.diff(arr) <= 0):
            raise ValueError(f"{info.field_name} must be strictly increasing")
        return arr

    @field_validator("values", mode="before")
    @classmethod
    def _freeze_values(cls, value):
        arr = frozen_array(value, float, 2, "values")
        if np.any(arr < 0):
            raise ValueError("tomogram values must be non-negative")
        return arr

    @model_validator(mode="after")
    def _check_shape(self):
        expected = (self.theta_axis.size, self.x_axis.size)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != {expected}")
        if self.x_axis.size < 2:
            raise ValueError("x_axis needs at least two samples")
        steps = np.diff(self.x_axis)
        if np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
            raise ValueError("x_axis must be uniform")
        if self.normalized:
            error = float(np.max(np.abs(1.0 - self.column_integrals())))
            if error > 1e-6:
                raise ValueError(f"column integrals deviate from 1 by {error!r}")
        return self

    @property
    def x_step(self) -> float:
        return float(self.x_axis[1] - self.x_axis[0])

    def column_integrals(self) -> np.ndarray:
        return trapezoid(self.values, x=self.x_axis, axis=1)
