import logging
import math
from typing import Iterable, List

import numpy as np

from ..errors import DegenerateProjection, ZeroMeanPhotons
from ..models.tomogram import CatSource, ConditionalState, QuadraturePoint, TomogramGrid
from .analytic import (
    PI_QUARTER,
    check_axes,
    coherent_density,
    eta_array,
    normalize_columns,
    two_mode_tomogram_array,
)


logger = logging.getLogger(__name__)


def conditional_coefficients(src: CatSource, p2: QuadraturePoint) -> ConditionalState:
    """
    Coefficients of |beta> and |-beta> in mode c after mode d returned X2 at
    phase theta2: c_plus = psi_beta(X2), c_minus = e^{-i pi h} psi_{-beta}(X2).
    """
    c_plus = complex(PI_QUARTER * eta_array(src.beta, p2.X, p2.theta))
    c_minus = complex(PI_QUARTER * eta_array(-src.beta, p2.X, p2.theta))
    if src.h == 1:
        c_minus = -c_minus
    overlap = src.overlap
    norm_sq = abs(c_plus) ** 2 + abs(c_minus) ** 2 + 2.0 * (
        c_plus.conjugate() * c_minus
    ).real * overlap
    norm = math.sqrt(max(norm_sq, 0.0))
    if norm < 1e-150:
        raise DegenerateProjection(
            f"conditional state at X2={p2.X}, theta2={p2.theta:.6f} has norm {norm:.3e}",
            value=norm,
        )
    return ConditionalState(c_plus=c_plus, c_minus=c_minus, beta=src.beta, norm=norm)


def conditional_density(src: CatSource, p2: QuadraturePoint) -> float:
    """Probability density of the mode-d outcome (mode c integrated out)."""
    state = conditional_coefficients(src, p2)
    return src.norm_constant**2 * state.norm**2


def conditional_amplitude(state: ConditionalState, x, theta) -> np.ndarray:
    """<X_theta|phi_c> for the normalized conditional state."""
    psi_plus = PI_QUARTER * eta_array(state.beta, x, theta)
    psi_minus = PI_QUARTER * eta_array(-state.beta, x, theta)
    return (state.c_plus * psi_plus + state.c_minus * psi_minus) / state.norm


def conditional_mandel_q(state: ConditionalState) -> float:
    """
    Mandel Q of c_plus|beta> + c_minus|-beta>.

    With a|+-beta> = +-beta|+-beta>, <a^dag^2 a^2> = |beta|^4 and
    <n> = |beta|^2 (S - x)/(S + x), where S = |c_+|^2 + |c_-|^2 and
    x = 2 Re[c_+^* c_-] e^{-2|beta|^2}; then Q = |beta|^2 4 S x / ((S+x)(S-x)).
    """
    beta_sq = abs(state.beta) ** 2
    overlap = math.exp(-2.0 * beta_sq)
    total = abs(state.c_plus) ** 2 + abs(state.c_minus) ** 2
    cross = 2.0 * (state.c_plus.conjugate() * state.c_minus).real * overlap
    plus_side, minus_side = total + cross, total - cross
    if plus_side <= 0.0:
        raise DegenerateProjection("conditional state has zero norm", value=plus_side)
    mean = beta_sq * minus_side / plus_side
    if mean < 1e-12:
        raise ZeroMeanPhotons(f"mean photon number {mean:.3e} is zero", value=mean)
    return beta_sq * 4.0 * total * cross / (plus_side * minus_side)


def conditional_column(
    src: CatSource, p2: QuadraturePoint, theta1: float, x1_axis: np.ndarray
) -> np.ndarray:
    """Unnormalized omega_h(X1, theta1; X2, theta2) over x1_axis."""
    return two_mode_tomogram_array(src, x1_axis, theta1, p2.X, p2.theta)


def assemble_grid(
    columns: Iterable[np.ndarray],
    theta_axis: np.ndarray,
    x_axis: np.ndarray,
    **meta,
) -> TomogramGrid:
    """Stack raw columns, normalize each over X and wrap them in a grid."""
    values = normalize_columns(np.vstack(list(columns)), x_axis)
    return TomogramGrid(
        theta_axis=theta_axis, x_axis=x_axis, values=values, normalized=True, **meta
    )


def conditional_tomogram(
    src: CatSource, p2: QuadraturePoint, theta1_axis, x1_axis
) -> TomogramGrid:
    """
    Mode-c tomogram given the mode-d outcome p2, normalized per theta1 column
    so every column is the conditional quadrature density.
    """
    theta_axis, x_axis = check_axes(theta1_axis, x1_axis)
    columns: List[np.ndarray] = [
        conditional_column(src, p2, theta1, x_axis) for theta1 in theta_axis
    ]
    logger.debug(
        f"📋 Conditional grid {theta_axis.size}x{x_axis.size} at X2={p2.X}, "
        f"theta2={p2.theta:.6f}, |alpha|^2={src.alpha_sq}, h={src.h}"
    )
    return assemble_grid(
        columns, theta_axis, x_axis, kind="conditional", source=src, conditioning=p2
    )


def separable_conditional_tomogram(
    beta_mag: float, delta: float, p2: QuadraturePoint, theta1_axis, x1_axis
) -> TomogramGrid:
    """
    Mode-c tomogram of |beta>|beta> given the mode-d outcome p2. The product
    form makes it independent of p2 apart from the constant factor removed by
    column normalization.
    """
    theta_axis, x_axis = check_axes(theta1_axis, x1_axis)
    mode_d = float(coherent_density(beta_mag, delta, p2.X, p2.theta))
    columns = (
        coherent_density(beta_mag, delta, x_axis, theta1) * mode_d for theta1 in theta_axis
    )
    return assemble_grid(columns, theta_axis, x_axis, kind="separable", conditioning=p2)

