"""
Write the plot-ready data for the conditional-tomogram plots:

  even_cat_*  even cat (h=0) conditional grids at phi = 0.3, pi/2, 3pi/2
  qcurve_*    Mandel Q against phi for h=0 and h=1
  odd_cat_*   odd cat (h=1) conditional grids at the same phases
  baseline_*  separable |beta>|beta> conditional grid

Each grid is written as CSV and PGM; a strand summary goes to summary.txt.
"""

import argparse
import logging
import math
import sys
from functools import partial
from pathlib import Path

import numpy as np

from catomo.analysis.ridges import classify_grid, default_theta_axis, default_x_axis, regime_map
from catomo.analysis.validation import q_curve
from catomo.models.tomogram import CatSource, QuadraturePoint
from catomo.runtime.async_grid import parallel_conditional_tomogram
from catomo.settings import load_settings
from catomo.tomography.conditional import conditional_tomogram, separable_conditional_tomogram
from core.export import export_grid, write_curve_csv, write_report


logger = logging.getLogger("make_figures")

FIGURE_PHIS = {"phi0p3": 0.3, "phi_pi_2": math.pi / 2, "phi_3pi_2": 3 * math.pi / 2}


def main() -> int:
    parser = argparse.ArgumentParser(description="Generate figure data for catomo")
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument("--alpha-sq", dest="alpha_sq", type=float, default=10.0)
    parser.add_argument("--delta", type=float, default=0.2)
    parser.add_argument("--x2", type=float, default=2.0)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--config", default=None)
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    settings = load_settings(args.config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = []

    workers = args.workers or settings.workers
    build_grid = (
        partial(parallel_conditional_tomogram, workers=workers)
        if workers > 1
        else conditional_tomogram
    )
    theta_axis = default_theta_axis(settings.theta1_steps)
    x_axis = default_x_axis(settings.x1_min, settings.x1_max, settings.x1_steps)
    tags = {phi: tag for tag, phi in FIGURE_PHIS.items()}

    for figure, h in (("even_cat", 0), ("odd_cat", 1)):

        def export(phi: float, grid, figure: str = figure) -> None:
            for fmt in ("csv", "pgm"):
                export_grid(grid, out_dir / f"{figure}_{tags[phi]}.{fmt}", fmt)

        verdicts = regime_map(
            CatSource(alpha_sq=args.alpha_sq, delta=args.delta, h=h),
            args.x2,
            list(FIGURE_PHIS.values()),
            theta_axis,
            x_axis,
            settings.ridge_threshold,
            settings.merge_dx,
            settings.double_fraction,
            build_grid=build_grid,
            on_grid=export,
        )
        for phi, verdict in verdicts:
            summary.append(f"{figure}_{tags[phi]}: h={h} phi={phi:.4f} {verdict.label}")

    src = CatSource(alpha_sq=args.alpha_sq, delta=args.delta)
    baseline = separable_conditional_tomogram(
        src.beta_mag,
        src.delta,
        QuadraturePoint(X=args.x2, theta=src.delta - math.pi / 2),
        theta_axis,
        x_axis,
    )
    for fmt in ("csv", "pgm"):
        export_grid(baseline, out_dir / f"baseline_separable.{fmt}", fmt)
    verdict = classify_grid(
        baseline, settings.ridge_threshold, settings.merge_dx, settings.double_fraction
    )
    summary.append(f"baseline_separable: {verdict.label}")

    phis = np.linspace(0.0, 2.0 * math.pi, settings.phi_steps)
    for h in (0, 1):
        cat = CatSource(alpha_sq=args.alpha_sq, delta=args.delta, h=h)
        write_curve_csv(q_curve(cat, args.x2, phis), out_dir / f"qcurve_h{h}.csv")

    write_report("\n".join(summary) + "\n", out_dir / "summary.txt")
    logger.info(f"✅ Wrote figure data to {out_dir}")
    for line in summary:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
