import numpy as np
from pydantic import Field, field_validator, model_validator

from .base_model import BaseModel, frozen_array


class TruncationSpec(BaseModel):
    """Fock cutoff: basis |0>..|dim-1> and the largest tolerated tail mass."""

    dim: int = Field(ge=1)
    tail_tol: float = Field(default=1e-10, gt=0)


class FockVector(BaseModel):
    """Single-mode amplitudes c_n, n = 0..dim-1."""

    amps: np.ndarray
    normalized: bool = False
    tail: float = Field(default=0.0, ge=0)

    @field_validator("amps", mode="before")
    @classmethod
    def _freeze(cls, value):
        return frozen_array(value, complex, 1, "amps")

    @model_validator(mode="after")
    def _check_norm(self):
        if self.normalized:
            norm_sq = self.norm_sq
            if not (1.0 - self.tail - 1e-12 <= norm_sq <= 1.0 + 1e-12):
                raise ValueError(
                    f"norm {norm_sq!r} outside [1 - tail, 1] for tail {self.tail!r}"
                )
        return self

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


class TwoModeFock(BaseModel):
    """Two-mode amplitudes c_mn over |m>_c |n>_d (rows: mode c)."""

    amps: np.ndarray
    normalized: bool = False
    tail: float = Field(default=0.0, ge=0)

    @field_validator("amps", mode="before")
    @classmethod
    def _freeze(cls, value):
        arr = frozen_array(value, complex, 2, "amps")
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"amps must be square, got shape {arr.shape}")
        return arr

    @model_validator(mode="after")
    def _check_norm(self):
        if self.normalized:
            norm_sq = self.norm_sq
            if not (1.0 - self.tail - 1e-12 <= norm_sq <= 1.0 + 1e-12):
                raise ValueError(
                    f"Frobenius norm {norm_sq!r} outside [1 - tail, 1] for tail {self.tail!r}"
                )
        return self

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


class ReducedDensity(BaseModel):
    """Reduced density matrix of one mode."""

    rho: np.ndarray

    @field_validator("rho", mode="before")
    @classmethod
    def _freeze(cls, value):
        arr = frozen_array(value, complex, 2, "rho")
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"rho must be square, got shape {arr.shape}")
        if np.max(np.abs(arr - arr.conj().T)) > 1e-12:
            raise ValueError("rho is not Hermitian within 1e-12")
        trace = np.trace(arr).real
        if abs(trace - 1.0) > 1e-10:
            raise ValueError(f"trace {trace!r} differs from 1 by more than 1e-10")
        if np.min(np.linalg.eigvalsh(arr)) < -1e-10:
            raise ValueError("rho has eigenvalues below -1e-10")
        return arr

    @property
    def dim(self) -> int:
        return self.rho.shape[0]
