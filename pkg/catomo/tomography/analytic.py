"""
Closed-form optical tomograms of the beam-splitter output states.

Conventions: X_theta = q cos(theta) + p sin(theta) with vacuum variance 1/2, and
<X_theta|beta> = pi^{-1/4} eta(X, theta; beta), where

    eta(X, theta; beta) = exp(-|beta|^2/2 - X^2/2 + sqrt(2) beta X e^{-i theta}
                              - beta^2 e^{-2 i theta} / 2).

The array functions broadcast over their X/theta arguments; the point
functions taking `QuadraturePoint` are thin wrappers around them.
"""

import logging
import math
from typing import Literal

import numpy as np
from scipy.integrate import trapezoid

from ..errors import DegenerateProjection
from ..models.tomogram import CatSource, QuadraturePoint, TomogramGrid


logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
PI_QUARTER = math.pi**-0.25


def beta_r(src: CatSource, r: int) -> complex:
    """beta_r = beta e^{i pi r}."""
    return src.beta if r == 0 else -src.beta


def eta_array(beta: complex, x, theta) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rot = np.exp(-1j * np.asarray(theta, dtype=float))
    exponent = (
        -0.5 * abs(beta) ** 2
        - 0.5 * x * x
        + SQRT2 * beta * x * rot
        - 0.5 * beta * beta * rot * rot
    )
    return np.exp(exponent)


def eta_r(src: CatSource, r: Literal[0, 1], p: QuadraturePoint) -> complex:
    """Kernel eta_r(X, theta) of the two-mode tomogram."""
    return complex(eta_array(beta_r(src, r), p.X, p.theta))


def two_mode_tomogram_array(src: CatSource, x1, theta1, x2, theta2) -> np.ndarray:
    """(N_h^2 / pi) |sum_r e^{-i pi r h} eta_r(X1, theta1) eta_r(X2, theta2)|^2."""
    sign = -1.0 if src.h == 1 else 1.0
    plus = eta_array(src.beta, x1, theta1) * eta_array(src.beta, x2, theta2)
    minus = eta_array(-src.beta, x1, theta1) * eta_array(-src.beta, x2, theta2)
    return (src.norm_constant**2 / math.pi) * np.abs(plus + sign * minus) ** 2


def two_mode_tomogram(src: CatSource, p1: QuadraturePoint, p2: QuadraturePoint) -> float:
    return float(two_mode_tomogram_array(src, p1.X, p1.theta, p2.X, p2.theta))


def coherent_density(beta_mag: float, delta: float, x, theta) -> np.ndarray:
    """(1/sqrt(pi)) exp[-(X - sqrt(2)|beta| cos(delta - theta))^2]."""
    x = np.asarray(x, dtype=float)
    ridge = SQRT2 * beta_mag * np.cos(delta - np.asarray(theta, dtype=float))
    return INV_SQRT_PI * np.exp(-((x - ridge) ** 2))


def coherent_mode_tomogram(beta_mag: float, delta: float, p: QuadraturePoint) -> float:
    return float(coherent_density(beta_mag, delta, p.X, p.theta))


def separable_tomogram(
    beta_mag: float, delta: float, p1: QuadraturePoint, p2: QuadraturePoint
) -> float:
    """Tomogram of |beta>|beta>: the product of the two mode tomograms."""
    return coherent_mode_tomogram(beta_mag, delta, p1) * coherent_mode_tomogram(
        beta_mag, delta, p2
    )


def marginal_tomogram_array(src: CatSource, x, theta) -> np.ndarray:
    """
    Tomogram of mode c alone (mode d traced out):
    N_h^2 (|psi_+|^2 + |psi_-|^2 + 2 e^{-2|beta|^2} Re[(-1)^h psi_+ psi_-^*]).
    """
    psi_plus = PI_QUARTER * eta_array(src.beta, x, theta)
    psi_minus = PI_QUARTER * eta_array(-src.beta, x, theta)
    sign = -1.0 if src.h == 1 else 1.0
    cross = 2.0 * src.overlap * sign * (psi_plus * np.conj(psi_minus)).real
    return src.norm_constant**2 * (np.abs(psi_plus) ** 2 + np.abs(psi_minus) ** 2 + cross)


def marginal_tomogram(src: CatSource, p: QuadraturePoint) -> float:
    return float(marginal_tomogram_array(src, p.X, p.theta))


def psi_weight(
    src: CatSource,
    p: QuadraturePoint,
    sign: Literal[1, -1],
    variant: Literal["derived", "printed"] = "derived",
) -> float:
    """
    |psi_{+-beta}(X, theta)|^2 written out as a single exponential.

    "derived" is the modulus-square of <X_theta|+-beta>; "printed" carries
    coefficient 2 on the cos 2(delta - theta) term and is kept only so the two
    can be compared against the Fock-space oracle.
    """
    phase = src.delta - p.theta
    cos2_coefficient = {"derived": 1.0, "printed": 2.0}[variant]
    exponent = (
        -src.beta_sq
        - cos2_coefficient * src.beta_sq * math.cos(2.0 * phase)
        - p.X**2
        + sign * 2.0 * SQRT2 * p.X * src.beta_mag * math.cos(phase)
    )
    return INV_SQRT_PI * math.exp(exponent)


def check_axes(theta_axis, x_axis):
    theta_axis = np.asarray(theta_axis, dtype=float)
    x_axis = np.asarray(x_axis, dtype=float)
    if theta_axis.ndim != 1 or theta_axis.size == 0:
        raise ValueError("theta axis must be a nonempty 1-D sequence")
    if x_axis.ndim != 1 or x_axis.size < 2:
        raise ValueError("x axis needs at least two samples")
    return theta_axis, x_axis


def normalize_columns(values: np.ndarray, x_axis: np.ndarray) -> np.ndarray:
    """Divide every theta column by its trapezoid integral over X."""
    integrals = trapezoid(values, x=x_axis, axis=1)
    smallest = float(np.min(integrals))
    if smallest < 1e-150:
        raise DegenerateProjection(
            f"tomogram column integrates to {smallest:.3e}", value=smallest
        )
    return values / integrals[:, None]


def coherent_tomogram_grid(
    beta_mag: float, delta: float, theta_axis, x_axis, normalize: bool = False
) -> TomogramGrid:
    """Single-strand grid of the coherent state |beta| e^{i delta}."""
    theta_axis, x_axis = check_axes(theta_axis, x_axis)
    values = coherent_density(beta_mag, delta, x_axis[None, :], theta_axis[:, None])
    if normalize:
        values = normalize_columns(values, x_axis)
    return TomogramGrid(
        theta_axis=theta_axis,
        x_axis=x_axis,
        values=values,
        normalized=normalize,
        kind="coherent",
    )


def marginal_tomogram_grid(src: CatSource, theta_axis, x_axis) -> TomogramGrid:
    theta_axis, x_axis = check_axes(theta_axis, x_axis)
    values = marginal_tomogram_array(src, x_axis[None, :], theta_axis[:, None])
    logger.debug(
        f"📋 Marginal grid {values.shape} for |alpha|^2={src.alpha_sq}, h={src.h}"
    )
    return TomogramGrid(
        theta_axis=theta_axis,
        x_axis=x_axis,
        values=np.maximum(values, 0.0),
        kind="marginal",
        source=src,
    )
