import logging
import math
from pathlib import Path
from typing import List

import numpy as np

from catomo.analysis.ridges import classify_grid, default_theta_axis, default_x_axis
from catomo.analysis.validation import (
    audit_normalization,
    compare_with_oracle,
    q_curve,
    resolve_psi_exponent,
)
from catomo.models.fock import TruncationSpec
from catomo.models.reports import StrandVerdict
from catomo.models.run_config import RunConfig
from catomo.models.tomogram import CatSource, QuadraturePoint, TomogramGrid
from catomo.oracle.fock_oracle import (
    default_truncation,
    entangled_output,
    entanglement_entropy,
    make_coherent,
    product_state,
)
from catomo.runtime.async_grid import parallel_conditional_tomogram
from catomo.settings import NumericsSettings
from catomo.tomography.analytic import coherent_tomogram_grid, marginal_tomogram_grid
from catomo.tomography.conditional import conditional_coefficients, conditional_tomogram

from .export import export_grid, write_curve_csv, write_report


logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-7
NORMALIZATION_TOLERANCE = 1e-6
VALIDATE_ALPHA_SQ = (0.5, 2.0)
# below this the two |psi|^2 exponent variants agree to within tolerance
EXPONENT_MIN_ALPHA_SQ = 2.0


def _truncation(config: RunConfig, alpha_sq: float, settings: NumericsSettings) -> TruncationSpec:
    if config.dim is not None:
        return TruncationSpec(dim=config.dim, tail_tol=settings.tail_tol)
    return default_truncation(alpha_sq, settings.tail_tol)


def _axes(config: RunConfig):
    return (
        default_theta_axis(config.theta1_steps),
        default_x_axis(config.x1_min, config.x1_max, config.x1_steps),
    )


def build_conditional_grid(config: RunConfig) -> TomogramGrid:
    theta_axis, x_axis = _axes(config)
    src, p2 = config.source, config.conditioning
    state = conditional_coefficients(src, p2)
    weight_plus, weight_minus = state.weights
    logger.info(
        f"🔍 Conditioning on X2={p2.X}, theta2={p2.theta:.6f}: "
        f"|beta> weight {weight_plus:.4f}, |-beta> weight {weight_minus:.4f}"
    )
    if config.workers > 1:
        return parallel_conditional_tomogram(src, p2, theta_axis, x_axis, config.workers)
    return conditional_tomogram(src, p2, theta_axis, x_axis)


def run_tomogram(config: RunConfig, settings: NumericsSettings) -> Path:
    """Write the single-mode tomogram of mode c (cat) or of the coherent state |beta>."""
    theta_axis, x_axis = _axes(config)
    src = config.source
    if config.state == "coherent":
        grid = coherent_tomogram_grid(src.beta_mag, src.delta, theta_axis, x_axis)
    else:
        grid = marginal_tomogram_grid(src, theta_axis, x_axis)
    return export_grid(grid, config.default_out_path(), config.format)


def run_conditional(config: RunConfig, settings: NumericsSettings) -> StrandVerdict:
    """Write the conditional mode-c grid and classify its strand structure."""
    grid = build_conditional_grid(config)
    export_grid(grid, config.default_out_path(), config.format)
    verdict = classify_grid(
        grid, settings.ridge_threshold, settings.merge_dx, settings.double_fraction
    )
    logger.info(f"✅ Conditional tomogram is {verdict.label}-stranded")
    print(verdict.to_kv(), end="")
    return verdict


def run_qcurve(config: RunConfig, settings: NumericsSettings) -> Path:
    """Write Mandel Q of the conditional state against phi in [0, 2 pi]."""
    phis = np.linspace(0.0, 2.0 * math.pi, config.phi_steps)
    curve = q_curve(config.source, config.x2, phis)
    return write_curve_csv(curve, config.default_out_path())


def run_entropy(config: RunConfig, settings: NumericsSettings) -> float:
    """Entanglement entropy (bits) of the beam-splitter output, from the Fock oracle."""
    src = config.source
    spec = _truncation(config, src.alpha_sq, settings)
    if config.state == "coherent":
        mode = make_coherent(src.beta, spec)
        state = product_state(mode, mode)
    else:
        state = entangled_output(src, spec)
    value = entanglement_entropy(state)
    print(f"entropy_bits={value!r}")
    if config.out_path:
        write_report(f"[entropy]\nalpha_sq={src.alpha_sq!r}\nh={src.h}\nentropy_bits={value!r}\n", config.out_path)
    return value


def run_validate(config: RunConfig, settings: NumericsSettings) -> bool:
    """
    Cross-check the closed forms against the Fock oracle, audit grid
    normalization and pin the |psi|^2 exponent. Returns True if all checks pass.
    """
    blocks: List[str] = []
    failures: List[str] = []

    for alpha_sq in sorted(set(VALIDATE_ALPHA_SQ) | {config.alpha_sq}):
        for h in (0, 1):
            if h == 1 and alpha_sq == 0.0:
                continue
            src = CatSource(alpha_sq=alpha_sq, delta=config.delta, h=h)
            report = compare_with_oracle(src, spec=_truncation(config, alpha_sq, settings))
            blocks.append(report.to_kv())
            if not report.max_abs_diff <= ORACLE_TOLERANCE:
                failures.append(f"oracle |alpha|^2={alpha_sq} h={h}: {report.max_abs_diff:.3e}")

    src = config.source
    wide_x = np.linspace(-14.0, 14.0, 561)
    marginal = marginal_tomogram_grid(src, default_theta_axis(config.theta1_steps), wide_x)
    x2 = 2.0 if config.x2 is None else config.x2
    theta2 = src.delta + math.pi / 2 if config.theta2 is None else config.theta2
    conditional = conditional_tomogram(
        src, QuadraturePoint(X=x2, theta=theta2), *_axes(config)
    )
    for name, grid in (("marginal", marginal), ("conditional", conditional)):
        report = audit_normalization(grid)
        blocks.append(report.to_kv())
        if not report.max_column_error <= NORMALIZATION_TOLERANCE:
            failures.append(f"{name} normalization: {report.max_column_error:.3e}")

    exponent_src = CatSource(
        alpha_sq=max(src.alpha_sq, EXPONENT_MIN_ALPHA_SQ), delta=src.delta, h=src.h
    )
    exponent = resolve_psi_exponent(
        exponent_src, spec=_truncation(config, exponent_src.alpha_sq, settings)
    )
    blocks.append(exponent.to_kv())
    if exponent.winner != "derived":
        failures.append(f"exponent variant resolved to {exponent.winner}")

    text = "\n".join(blocks)
    print(text, end="")
    if config.out_path:
        write_report(text, config.out_path)

    for failure in failures:
        logger.error(f"❌ Validation failed: {failure}")
    if not failures:
        logger.info(f"✅ All {len(blocks)} validation checks passed")
    return not failures
