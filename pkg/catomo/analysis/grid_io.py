"""
Plain-text grid files: a `# theta1, x1, omega` header, then one row per grid
point (theta-major) with 17 significant digits so a re-read grid is bitwise
equal to the one written.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import EmptyGrid
from ..models.tomogram import TomogramGrid


logger = logging.getLogger(__name__)

CSV_HEADER = "theta1, x1, omega"
CSV_FORMAT = "%.17g"


def grid_rows(grid: TomogramGrid) -> np.ndarray:
    theta, x = np.meshgrid(grid.theta_axis, grid.x_axis, indexing="ij")
    return np.column_stack((theta.ravel(), x.ravel(), grid.values.ravel()))


def write_grid_csv(grid: TomogramGrid, path: Union[str, Path]) -> Path:
    path = Path(path)
    np.savetxt(path, grid_rows(grid), fmt=CSV_FORMAT, delimiter=", ", header=CSV_HEADER, comments="# ")
    logger.info(f"✅ Wrote {grid.values.size} grid points to {path}")
    return path


def read_grid_csv(path: Union[str, Path], normalized: bool = True) -> TomogramGrid:
    """Rebuild a grid from a CSV written by `write_grid_csv`."""
    rows = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if rows.size == 0:
        raise EmptyGrid(f"{path} holds no grid rows", value=0.0)
    theta_axis = np.unique(rows[:, 0])
    x_axis = np.unique(rows[:, 1])
    if rows.shape[0] != theta_axis.size * x_axis.size:
        raise ValueError(f"{path} is not a complete theta x X grid")
    values = rows[:, 2].reshape(theta_axis.size, x_axis.size)
    logger.debug(f"📋 Read {theta_axis.size}x{x_axis.size} grid from {path}")
    return TomogramGrid(
        theta_axis=theta_axis, x_axis=x_axis, values=values, normalized=normalized
    )
