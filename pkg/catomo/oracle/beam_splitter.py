import logging
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..errors import TruncationTooSmall
from ..models.fock import TwoModeFock


logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def rotation_blocks(n_max: int) -> Tuple[np.ndarray, ...]:
    """
    Per-block matrices of the 50/50 beam splitter for total photon number
    N = 0..n_max. Block N maps |m, N-m> to sum_p B_N[p, m] |p, N-p>.

    Input creation operators map as a^dag -> (c^dag + d^dag)/sqrt(2) and
    b^dag -> (d^dag - c^dag)/sqrt(2). Each block is grown from the previous
    one by applying the transformed creation operator, which keeps every
    entry bounded by 1 (no binomials or factorials are formed).
    """
    blocks = [np.ones((1, 1))]
    for n in range(1, n_max + 1):
        prev = blocks[-1]
        raised = np.zeros((n + 1, n))
        raised[1:] = prev
        kept = np.zeros((n + 1, n))
        kept[:n] = prev
        p = np.arange(n + 1, dtype=float)
        sqrt_c = np.sqrt(p)[:, None]
        sqrt_d = np.sqrt(n - p)[:, None]

        block = np.empty((n + 1, n + 1))
        block[:, 0] = (sqrt_d[:, 0] * kept[:, 0] - sqrt_c[:, 0] * raised[:, 0]) / np.sqrt(
            2.0 * n
        )
        block[:, 1:] = (sqrt_c * raised + sqrt_d * kept) / np.sqrt(
            2.0 * np.arange(1, n + 1)
        )
        block.setflags(write=False)
        blocks.append(block)
    return tuple(blocks)


def apply_beam_splitter(state: TwoModeFock, tail_tol: float = 1e-10) -> TwoModeFock:
    """
    Apply the 50/50 beam splitter block by block; |alpha>|0> leaves as |beta>|beta>.

    Blocks with N < dim fit the truncated space entirely and are rotated exactly.
    Higher blocks are rotated in full and the components outside the cutoff are
    dropped; their mass must stay below `tail_tol`.
    """
    dim = state.dim
    n_top = 2 * (dim - 1)
    blocks = rotation_blocks(n_top)
    amps = state.amps
    out = np.zeros((dim, dim), dtype=complex)
    dropped = 0.0

    for n in range(n_top + 1):
        lo, hi = max(0, n - dim + 1), min(n, dim - 1)
        m = np.arange(lo, hi + 1)
        block_in = np.zeros(n + 1, dtype=complex)
        block_in[m] = amps[m, n - m]
        if not np.any(block_in):
            continue
        block_out = blocks[n] @ block_in
        out[m, n - m] = block_out[m]
        if lo > 0 or hi < n:
            dropped += float(np.sum(np.abs(block_out) ** 2) - np.sum(np.abs(block_out[m]) ** 2))

    if dropped >= tail_tol:
        raise TruncationTooSmall(
            f"beam splitter pushed mass {dropped:.3e} beyond dim={dim} (tail_tol={tail_tol:.1e})",
            value=dropped,
        )
    logger.debug(f"📋 Beam splitter applied on dim={dim}, dropped mass {dropped:.3e}")
    return TwoModeFock(
        amps=out, normalized=state.normalized, tail=state.tail + max(dropped, 0.0)
    )
