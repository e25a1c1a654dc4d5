"""
Strand structure of tomogram grids.

A strand shows up in every theta column as a ridge (local maximum) of the
quadrature density; one coherent component traces one sinusoidal strand.
"""

import logging
import math
from collections import Counter
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import EmptyGrid
from ..models.reports import Ridge, RidgeSet, StrandVerdict
from ..models.tomogram import CatSource, QuadraturePoint, TomogramGrid
from ..tomography.conditional import conditional_tomogram


logger = logging.getLogger(__name__)


def _column_ridges(
    column: np.ndarray, x_axis: np.ndarray, ridge_threshold: float, merge_dx: float
) -> Tuple[Ridge, ...]:
    peak = float(np.max(column))
    if peak <= 0.0:
        return ()
    inner = column[1:-1]
    is_max = (inner > column[:-2]) & (inner > column[2:]) & (inner >= ridge_threshold * peak)
    candidates = np.nonzero(is_max)[0] + 1

    # highest first; a kept maximum swallows lower ones within merge_dx
    kept: List[int] = []
    for idx in sorted(candidates, key=lambda i: (-column[i], i)):
        if all(abs(x_axis[idx] - x_axis[k]) >= merge_dx for k in kept):
            kept.append(idx)
    return tuple(
        Ridge(x_position=float(x_axis[i]), height=float(column[i])) for i in sorted(kept)
    )


def find_ridges(
    grid: TomogramGrid, ridge_threshold: float = 0.05, merge_dx: float = 0.5
) -> RidgeSet:
    """Strict local maxima per theta column that reach ridge_threshold x column max."""
    if not 0.0 < ridge_threshold < 1.0:
        raise ValueError(f"ridge_threshold must lie in (0, 1), got {ridge_threshold}")
    if grid.values.size == 0 or float(np.max(grid.values)) <= 0.0:
        raise EmptyGrid("grid has no positive samples", value=0.0)
    if not grid.normalized:
        logger.debug("📋 find_ridges on a grid without column normalization")

    per_theta = tuple(
        _column_ridges(column, grid.x_axis, ridge_threshold, merge_dx)
        for column in grid.values
    )
    return RidgeSet(
        per_theta=per_theta,
        theta_axis=tuple(float(t) for t in grid.theta_axis),
        x_min=float(grid.x_axis[0]),
        x_max=float(grid.x_axis[-1]),
        ridge_threshold=ridge_threshold,
    )


def classify_strands(ridges: RidgeSet, double_fraction: float = 0.25) -> StrandVerdict:
    """Double-stranded when at least `double_fraction` of columns carry two or more ridges."""
    counts = ridges.counts
    if not counts:
        raise EmptyGrid("ridge set has no columns", value=0.0)
    fraction = sum(1 for c in counts if c >= 2) / len(counts)
    tally = Counter(counts)
    mode = max(tally, key=lambda c: (tally[c], c))
    crossings = tuple(t for t, c in zip(ridges.theta_axis, counts) if c < mode)
    label = "double" if fraction >= double_fraction else "single"
    logger.debug(
        f"🔍 Strand counts {dict(sorted(tally.items()))}: {label} "
        f"(fraction_double={fraction:.3f}, crossings={len(crossings)})"
    )
    return StrandVerdict(
        label=label,
        fraction_double=fraction,
        crossing_thetas=crossings,
        decision_level=double_fraction,
    )


def classify_grid(
    grid: TomogramGrid,
    ridge_threshold: float = 0.05,
    merge_dx: float = 0.5,
    double_fraction: float = 0.25,
) -> StrandVerdict:
    return classify_strands(find_ridges(grid, ridge_threshold, merge_dx), double_fraction)


def regime_map(
    src: CatSource,
    x2: float,
    phis: Sequence[float],
    theta1_axis,
    x1_axis,
    ridge_threshold: float = 0.05,
    merge_dx: float = 0.5,
    double_fraction: float = 0.25,
    build_grid: Callable[..., TomogramGrid] = conditional_tomogram,
    on_grid: Optional[Callable[[float, TomogramGrid], None]] = None,
) -> List[Tuple[float, StrandVerdict]]:
    """
    Strand verdict of the conditional tomogram for each relative phase
    |delta - theta2|, with theta2 = delta - phi.

    `build_grid(src, p2, theta1_axis, x1_axis)` evaluates each grid; `on_grid`
    receives every (phi, grid) pair before it is classified.
    """
    verdicts = []
    for phi in phis:
        p2 = QuadraturePoint(X=x2, theta=src.delta - phi)
        grid = build_grid(src, p2, theta1_axis, x1_axis)
        if on_grid is not None:
            on_grid(float(phi), grid)
        verdict = classify_grid(grid, ridge_threshold, merge_dx, double_fraction)
        verdicts.append((float(phi), verdict))
        logger.info(f"🔍 phi={phi:.4f} rad -> {verdict.label}")
    return verdicts


def default_theta_axis(steps: int = 128) -> np.ndarray:
    """theta in [0, 2 pi) with `steps` samples."""
    return np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False)


def default_x_axis(x_min: float = -8.0, x_max: float = 8.0, steps: int = 321) -> np.ndarray:
    return np.linspace(x_min, x_max, steps)
