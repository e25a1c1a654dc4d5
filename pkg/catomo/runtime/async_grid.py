import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..models.tomogram import CatSource, QuadraturePoint, TomogramGrid
from ..tomography.analytic import check_axes
from ..tomography.conditional import assemble_grid, conditional_column


logger = logging.getLogger(__name__)


class AsyncGridEvaluator:
    """Evaluates independent tomogram columns on a thread pool."""

    def __init__(self, workers: int = 4):
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self.pool: Optional[ThreadPoolExecutor] = None

    async def start(self):
        """Create the worker pool."""
        if self.pool is None:
            self.pool = ThreadPoolExecutor(
                max_workers=self.workers, thread_name_prefix="catomo-column"
            )
            logger.info(f"✅ Grid evaluator started with {self.workers} workers")

    async def stop(self):
        """Shut the worker pool down."""
        if self.pool:
            self.pool.shutdown(wait=True)
            self.pool = None
            logger.info("🔌 Grid evaluator stopped.")

    async def __aenter__(self) -> "AsyncGridEvaluator":
        await self.start()
        return self

    async def __aexit__(self, exc_type, exc, tb):
        await self.stop()

    async def map_columns(
        self, column: Callable[[float], np.ndarray], thetas: Sequence[float]
    ) -> List[np.ndarray]:
        """Run `column(theta)` for every theta; results keep the order of `thetas`."""
        if self.pool is None:
            raise RuntimeError("grid evaluator is not started")
        loop = asyncio.get_running_loop()
        try:
            return list(
                await asyncio.gather(
                    *(loop.run_in_executor(self.pool, column, float(t)) for t in thetas)
                )
            )
        except Exception as e:
            logger.error(f"❗ Column evaluation error: {e}")
            raise

    async def conditional_tomogram(
        self, src: CatSource, p2: QuadraturePoint, theta1_axis, x1_axis
    ) -> TomogramGrid:
        """Concurrent counterpart of `conditional_tomogram`; bit-identical output."""
        theta_axis, x_axis = check_axes(theta1_axis, x1_axis)
        column = partial(_column_at, src, p2, x_axis)
        columns = await self.map_columns(column, theta_axis)
        return assemble_grid(
            columns, theta_axis, x_axis, kind="conditional", source=src, conditioning=p2
        )


def _column_at(src: CatSource, p2: QuadraturePoint, x_axis: np.ndarray, theta1: float):
    return conditional_column(src, p2, theta1, x_axis)


def parallel_conditional_tomogram(
    src: CatSource, p2: QuadraturePoint, theta1_axis, x1_axis, workers: int
) -> TomogramGrid:
    """Blocking helper for callers outside an event loop."""

    async def _run():
        async with AsyncGridEvaluator(workers) as evaluator:
            return await evaluator.conditional_tomogram(src, p2, theta1_axis, x1_axis)

    return asyncio.run(_run())
