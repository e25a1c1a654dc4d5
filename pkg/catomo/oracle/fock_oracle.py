"""
Truncated Fock-space numerics.

Everything here is computed from amplitudes in the photon-number basis and
never from the closed-form tomogram expressions, so it can serve as an
independent check of `catomo.tomography`.
"""

import logging
import math
from typing import Literal, Optional, Tuple

import numpy as np
from scipy.linalg import eigvalsh
from scipy.special import gammainc

from ..errors import DegenerateProjection, TruncationTooSmall, ZeroMeanPhotons
from ..models.fock import FockVector, ReducedDensity, TruncationSpec, TwoModeFock
from ..models.tomogram import CatSource, QuadraturePoint, cat_norm_constant
from .beam_splitter import apply_beam_splitter
from .hermite import quadrature_basis


logger = logging.getLogger(__name__)


def default_truncation(alpha_sq: float, tail_tol: float = 1e-10) -> TruncationSpec:
    """Cutoff with a wide Poisson margin for input mean photon number alpha_sq."""
    dim = math.ceil(2.0 * alpha_sq + 10.0 * math.sqrt(alpha_sq) + 20.0)
    return TruncationSpec(dim=dim, tail_tol=tail_tol)


def _poisson_tail(mean: float, dim: int) -> float:
    """P(n >= dim) for a Poisson distribution."""
    return float(gammainc(dim, mean)) if mean > 0 else 0.0


def _coherent_amps(beta: complex, dim: int) -> np.ndarray:
    steps = beta / np.sqrt(np.arange(1, dim, dtype=float))
    amps = np.concatenate(([1.0 + 0.0j], np.cumprod(steps)))
    return amps * math.exp(-0.5 * abs(beta) ** 2)


def make_coherent(beta: complex, spec: TruncationSpec) -> FockVector:
    """Truncated coherent state c_n = e^{-|beta|^2/2} beta^n / sqrt(n!)."""
    tail = _poisson_tail(abs(beta) ** 2, spec.dim)
    if tail >= spec.tail_tol:
        raise TruncationTooSmall(
            f"coherent state |beta|^2={abs(beta) ** 2:.4g} leaves tail {tail:.3e} "
            f"beyond dim={spec.dim} (tail_tol={spec.tail_tol:.1e})",
            value=tail,
        )
    return FockVector(amps=_coherent_amps(complex(beta), spec.dim), normalized=True, tail=tail)


def make_cat(alpha: complex, h: int, spec: TruncationSpec) -> FockVector:
    """Truncated N_h(|alpha> + e^{i pi h}|-alpha>); only n = h (mod 2) survive."""
    alpha = complex(alpha)
    alpha_sq = abs(alpha) ** 2
    if h == 1 and alpha_sq == 0.0:
        raise ValueError("the odd cat state does not exist for alpha = 0")
    norm = cat_norm_constant(alpha_sq, h)
    # the Poisson tail counts both parities, so this bounds the true tail
    tail = min(4.0 * norm**2 * _poisson_tail(alpha_sq, spec.dim), 1.0)
    if tail >= spec.tail_tol:
        raise TruncationTooSmall(
            f"cat state |alpha|^2={alpha_sq:.4g} leaves tail {tail:.3e} "
            f"beyond dim={spec.dim} (tail_tol={spec.tail_tol:.1e})",
            value=tail,
        )
    n = np.arange(spec.dim)
    amps = np.where(n % 2 == h, 2.0 * norm * _coherent_amps(alpha, spec.dim), 0.0)
    return FockVector(amps=amps, normalized=True, tail=tail)


def make_fock(n: int, spec: TruncationSpec) -> FockVector:
    if not 0 <= n < spec.dim:
        raise TruncationTooSmall(f"|{n}> is outside dim={spec.dim}", value=float(n))
    amps = np.zeros(spec.dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps=amps, normalized=True)


def product_state(first: FockVector, second: FockVector) -> TwoModeFock:
    """|first>_c |second>_d; both factors must share one cutoff."""
    if first.dim != second.dim:
        raise ValueError(f"cutoffs differ: {first.dim} vs {second.dim}")
    return TwoModeFock(
        amps=np.outer(first.amps, second.amps),
        normalized=first.normalized and second.normalized,
        tail=first.tail + second.tail,
    )


def entangled_output(src: CatSource, spec: Optional[TruncationSpec] = None) -> TwoModeFock:
    """Cat state in port a, vacuum in port b, through the beam splitter."""
    spec = spec or default_truncation(src.alpha_sq)
    cat = make_cat(src.alpha, src.h, spec)
    vacuum = make_fock(0, spec)
    logger.debug(f"📋 Building |Phi>_{src.h} for |alpha|^2={src.alpha_sq} on dim={spec.dim}")
    return apply_beam_splitter(product_state(cat, vacuum), tail_tol=spec.tail_tol)


def quadrature_amp(n: int, X: float, theta: float) -> complex:
    """<X_theta|n> = e^{-i n theta} h_n(X)."""
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    return complex(quadrature_basis(n + 1, np.asarray(X, dtype=float), theta)[n])


def quadrature_wavefunction(state: FockVector, x, theta: float) -> np.ndarray:
    """<X_theta|psi> sampled at `x`."""
    return np.tensordot(state.amps, quadrature_basis(state.dim, x, theta), axes=1)


def quadrature_density(state: FockVector, x, theta: float) -> np.ndarray:
    """|<X_theta|psi>|^2 sampled at `x`."""
    return np.abs(quadrature_wavefunction(state, x, theta)) ** 2


def two_mode_amplitudes(
    state: TwoModeFock, x1, theta1: float, x2, theta2: float
) -> np.ndarray:
    """<X1,theta1|<X2,theta2|state> on the outer grid x1 (rows) by x2 (columns)."""
    left = quadrature_basis(state.dim, np.atleast_1d(x1), theta1)
    right = quadrature_basis(state.dim, np.atleast_1d(x2), theta2)
    return left.T @ state.amps @ right


def two_mode_amplitude(state: TwoModeFock, p1: QuadraturePoint, p2: QuadraturePoint) -> complex:
    return complex(two_mode_amplitudes(state, p1.X, p1.theta, p2.X, p2.theta)[0, 0])


def two_mode_density(state: TwoModeFock, x1, theta1: float, x2, theta2: float) -> np.ndarray:
    return np.abs(two_mode_amplitudes(state, x1, theta1, x2, theta2)) ** 2


def project_quadrature(
    state: TwoModeFock, mode: Literal["c", "d"], X: float, theta: float
) -> Tuple[FockVector, float]:
    """
    Contract `mode` with <X_theta| and return the unnormalized vector left on
    the other mode together with its squared norm (the outcome density).
    """
    bra = quadrature_basis(state.dim, np.asarray(X, dtype=float), theta)
    if mode == "d":
        remaining = state.amps @ bra
    elif mode == "c":
        remaining = bra @ state.amps
    else:
        raise ValueError(f"mode must be 'c' or 'd', got {mode!r}")
    weight = float(np.vdot(remaining, remaining).real)
    if weight < 1e-300:
        raise DegenerateProjection(
            f"quadrature outcome X={X} theta={theta} on mode {mode} has weight {weight:.3e}",
            value=weight,
        )
    return FockVector(amps=remaining), weight


def project_point(state: TwoModeFock, mode: Literal["c", "d"], p: QuadraturePoint):
    """project_quadrature at a QuadraturePoint."""
    return project_quadrature(state, mode, p.X, p.theta)


def mandel_q(state: FockVector) -> float:
    """Q = (<n^2> - <n>^2)/<n> - 1 from Fock-basis moments (state renormalized)."""
    probs = state.probabilities()
    total = float(np.sum(probs))
    if total <= 0.0:
        raise ZeroMeanPhotons("state has zero norm", value=0.0)
    probs = probs / total
    n = np.arange(state.dim, dtype=float)
    mean = float(np.dot(n, probs))
    if mean < 1e-12:
        raise ZeroMeanPhotons(f"mean photon number {mean:.3e} is zero", value=mean)
    second = float(np.dot(n * n, probs))
    return (second - mean * mean) / mean - 1.0


def reduced_density(state: TwoModeFock) -> ReducedDensity:
    """rho_c = A A^dag for the (renormalized) amplitude matrix A."""
    amps = state.amps / math.sqrt(state.norm_sq)
    rho = amps @ amps.conj().T
    return ReducedDensity(rho=0.5 * (rho + rho.conj().T))


def entanglement_entropy(state: TwoModeFock) -> float:
    """Von Neumann entropy of mode c in bits."""
    eigenvalues = eigvalsh(reduced_density(state).rho)
    kept = eigenvalues[eigenvalues > 1e-14]
    entropy = float(-np.sum(kept * np.log2(kept)))
    logger.debug(f"📋 Schmidt spectrum head {np.sort(kept)[::-1][:4]} -> {entropy:.12f} bits")
    return max(entropy, 0.0)


def fidelity(first: FockVector, second: FockVector) -> float:
    """|<first|second>|^2 after normalizing both vectors."""
    overlap = np.vdot(first.amps, second.amps)
    return float(abs(overlap) ** 2 / (first.norm_sq * second.norm_sq))
