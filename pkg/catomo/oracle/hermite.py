"""
Normalized oscillator eigenfunctions h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.

The three-term recurrence runs on the normalized functions directly, so neither
H_n nor n! is ever formed and nothing overflows for large n.
"""

import math

import numpy as np


PI_QUARTER = math.pi**-0.25


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Return h_0..h_{n_max} evaluated at `x`, shape (n_max + 1, *x.shape)."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape, dtype=float)
    out[0] = PI_QUARTER * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            x * math.sqrt(2.0 / (n + 1)) * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
        )
    return out


def quadrature_basis(dim: int, x, theta: float) -> np.ndarray:
    """
    <X_theta|n> for n < dim, shape (dim, *x.shape).

    X_theta = q cos(theta) + p sin(theta) with vacuum variance 1/2; the phase
    factor e^{-i n theta} makes <X_theta|beta> = <X|beta e^{-i theta}>.
    """
    h = hermite_functions(dim - 1, x)
    phases = np.exp(-1j * theta * np.arange(dim))
    return phases.reshape((dim,) + (1,) * (h.ndim - 1)) * h
