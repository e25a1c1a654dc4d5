import logging
from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np
from PIL import Image

from catomo.analysis.grid_io import CSV_FORMAT, write_grid_csv
from catomo.models.tomogram import TomogramGrid


logger = logging.getLogger(__name__)


def grid_to_image(grid: TomogramGrid) -> np.ndarray:
    """8-bit image: theta1 along the horizontal axis, X increasing upwards."""
    peak = float(np.max(grid.values))
    scaled = grid.values / peak if peak > 0 else grid.values
    pixels = np.rint(255.0 * np.flipud(scaled.T))
    return pixels.astype(np.uint8)


def write_grid_pgm(grid: TomogramGrid, path: Union[str, Path]) -> Path:
    path = Path(path)
    Image.fromarray(grid_to_image(grid)).save(path, format="PPM")
    logger.info(f"✅ Wrote {grid.x_axis.size}x{grid.theta_axis.size} PGM image to {path}")
    return path


def export_grid(grid: TomogramGrid, path: Union[str, Path], fmt: str = "csv") -> Path:
    if fmt == "csv":
        return write_grid_csv(grid, path)
    if fmt == "pgm":
        return write_grid_pgm(grid, path)
    raise ValueError(f"unknown grid format {fmt!r}")


def write_curve_csv(curve: Iterable[Tuple[float, float]], path: Union[str, Path]) -> Path:
    path = Path(path)
    rows = np.asarray(list(curve), dtype=float).reshape(-1, 2)
    np.savetxt(path, rows, fmt=CSV_FORMAT, delimiter=", ", header="phi, q", comments="# ")
    logger.info(f"✅ Wrote {rows.shape[0]} curve points to {path}")
    return path


def write_report(text: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(text)
    logger.info(f"✅ Wrote report to {path}")
    return path
