import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DegenerateProjection, ZeroMeanPhotons
from ..models.fock import TruncationSpec
from ..models.reports import ExponentReport, NormalizationReport, OracleReport
from ..models.tomogram import CatSource, QuadraturePoint, TomogramGrid
from ..oracle.fock_oracle import (
    default_truncation,
    entangled_output,
    make_coherent,
    quadrature_density,
    two_mode_density,
)
from ..tomography.analytic import psi_weight, two_mode_tomogram_array
from ..tomography.conditional import conditional_coefficients, conditional_mandel_q


logger = logging.getLogger(__name__)

SWEEP_THETAS = (0.0, 0.7, math.pi / 2, 2.3, math.pi)
SWEEP_X = tuple(np.linspace(-6.0, 6.0, 21))

TomogramFunction = Callable[..., np.ndarray]


def audit_normalization(grid: TomogramGrid) -> NormalizationReport:
    """Largest |1 - integral| over the theta columns (trapezoid rule)."""
    errors = np.abs(1.0 - grid.column_integrals())
    worst = int(np.argmax(errors))
    report = NormalizationReport(
        max_column_error=float(errors[worst]),
        worst_theta=float(grid.theta_axis[worst]),
        columns=int(errors.size),
    )
    logger.debug(f"📋 Normalization audit: {report.max_column_error:.3e} at theta={report.worst_theta:.4f}")
    return report


def compare_with_oracle(
    src: CatSource,
    thetas: Sequence[float] = SWEEP_THETAS,
    x_points: Sequence[float] = SWEEP_X,
    spec: Optional[TruncationSpec] = None,
    tomogram_fn: TomogramFunction = two_mode_tomogram_array,
) -> OracleReport:
    """
    Evaluate the closed-form two-mode tomogram and the Fock-space contraction of
    the numerically built |Phi>_h on x_points^2 for every (theta1, theta2) pair
    drawn from `thetas`, and report the worst pointwise gap.
    """
    spec = spec or default_truncation(src.alpha_sq)
    state = entangled_output(src, spec)
    x = np.asarray(x_points, dtype=float)

    worst = (-1.0, 0.0, 0.0, 0.0, 0.0)
    for theta1 in thetas:
        for theta2 in thetas:
            oracle = two_mode_density(state, x, theta1, x, theta2)
            analytic = tomogram_fn(src, x[:, None], theta1, x[None, :], theta2)
            diff = np.abs(analytic - oracle)
            i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
            if diff[i, j] > worst[0]:
                worst = (float(diff[i, j]), float(x[i]), float(theta1), float(x[j]), float(theta2))

    report = OracleReport(
        alpha_sq=src.alpha_sq,
        h=src.h,
        dim=spec.dim,
        points_checked=len(thetas) ** 2 * x.size**2,
        max_abs_diff=worst[0],
        x1=worst[1],
        theta1=worst[2],
        x2=worst[3],
        theta2=worst[4],
    )
    logger.info(
        f"🔍 Oracle check |alpha|^2={src.alpha_sq}, h={src.h}, dim={spec.dim}: "
        f"max |diff| = {report.max_abs_diff:.3e}"
    )
    return report


def q_curve(src: CatSource, x2: float, phis: Sequence[float]) -> List[Tuple[float, float]]:
    """
    Mandel Q of the conditional mode-c state for each relative phase
    phi = |delta - theta2| (theta2 = delta - phi). Degenerate points are logged
    and reported as NaN.
    """
    curve = []
    for phi in phis:
        p2 = QuadraturePoint(X=x2, theta=src.delta - phi)
        try:
            q = conditional_mandel_q(conditional_coefficients(src, p2))
        except (DegenerateProjection, ZeroMeanPhotons) as e:
            logger.warning(f"⚠️ Q undefined at phi={phi:.4f}: {e}")
            q = float("nan")
        curve.append((float(phi), q))
    return curve


DEFAULT_EXPONENT_POINTS = tuple(
    QuadraturePoint(X=x, theta=t)
    for x in (-2.0, -0.5, 0.0, 1.3, 2.0)
    for t in (0.0, 0.7, math.pi / 2, 2.3, math.pi)
)


def resolve_psi_exponent(
    src: CatSource,
    points: Sequence[QuadraturePoint] = DEFAULT_EXPONENT_POINTS,
    spec: Optional[TruncationSpec] = None,
    tolerance: float = 1e-8,
) -> ExponentReport:
    """
    Decide which closed form of |psi_{+-beta}|^2 reproduces the Fock-space
    quadrature density of |+-beta>.
    """
    spec = spec or default_truncation(src.alpha_sq)
    gaps = {"derived": 0.0, "printed": 0.0}
    for sign in (1, -1):
        coherent = make_coherent(sign * src.beta, spec)
        for p in points:
            oracle = float(quadrature_density(coherent, p.X, p.theta))
            for variant in gaps:
                gap = abs(psi_weight(src, p, sign, variant) - oracle)
                gaps[variant] = max(gaps[variant], gap)

    passing = [v for v in ("derived", "printed") if gaps[v] <= tolerance]
    winner = passing[0] if len(passing) == 1 else None
    if winner is None:
        logger.warning(f"⚠️ No unique |psi|^2 exponent variant within {tolerance}: {gaps}")
    else:
        logger.info(f"✅ |psi|^2 exponent resolved: {winner} (gaps {gaps})")
    return ExponentReport(
        winner=winner,
        derived_max_diff=gaps["derived"],
        printed_max_diff=gaps["printed"],
        tolerance=tolerance,
    )
