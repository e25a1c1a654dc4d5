import math

import numpy as np
import pytest

from catomo.errors import DegenerateProjection
from catomo.models.tomogram import CatSource, ConditionalState, QuadraturePoint
from catomo.oracle.fock_oracle import default_truncation, entangled_output, mandel_q, project_quadrature
from catomo.tomography.analytic import psi_weight
from catomo.tomography.conditional import (
    conditional_amplitude,
    conditional_coefficients,
    conditional_mandel_q,
    conditional_tomogram,
    separable_conditional_tomogram,
)


SRC = CatSource(alpha_sq=10.0, delta=0.2, h=0)
THETA_AXIS = np.linspace(0.0, 2 * math.pi, 64, endpoint=False)
X_AXIS = np.linspace(-8.0, 8.0, 321)


def at_phi(phi: float, x2: float = 2.0) -> QuadraturePoint:
    """Mode-d outcome at relative phase phi = delta - theta2."""
    return QuadraturePoint(X=x2, theta=SRC.delta - phi)


@pytest.mark.parametrize("theta2", [0.0, 0.9, 2.6, 4.1])
def test_zero_outcome_leaves_even_cat(theta2):
    """Test that X2 = 0 gives equal coefficients."""
    state = conditional_coefficients(SRC, QuadraturePoint(X=0.0, theta=theta2))
    assert state.c_plus == state.c_minus


def test_quarter_turn_splits_evenly():
    """Test equal component weights at |delta - theta2| = pi/2 and 3 pi/2."""
    for phi in (math.pi / 2, 3 * math.pi / 2):
        plus, minus = conditional_coefficients(SRC, at_phi(phi)).weights
        assert math.isclose(plus, minus, rel_tol=1e-9)


def test_small_phase_favours_plus_component():
    """|c_+|^2 / |c_-|^2 = exp(4 sqrt2 X2 |beta| cos phi)."""
    state = conditional_coefficients(SRC, at_phi(0.3))
    ratio = abs(state.c_plus) ** 2 / abs(state.c_minus) ** 2
    expected_log = 4.0 * math.sqrt(2.0) * 2.0 * SRC.beta_mag * math.cos(0.3)
    assert math.isclose(math.log(ratio), expected_log, rel_tol=1e-12)
    assert ratio > 1e10


def test_odd_cat_flips_minus_coefficient():
    """Test that the odd cat flips the sign of the |-beta> coefficient."""
    odd = CatSource(alpha_sq=10.0, delta=0.2, h=1)
    p2 = at_phi(1.1)
    even_state, odd_state = conditional_coefficients(SRC, p2), conditional_coefficients(odd, p2)
    assert odd_state.c_plus == even_state.c_plus
    assert odd_state.c_minus == -even_state.c_minus


def test_conditional_coefficients_degenerate():
    """Test that a far-out outcome raises DegenerateProjection."""
    with pytest.raises(DegenerateProjection):
        conditional_coefficients(SRC, QuadraturePoint(X=60.0, theta=0.0))


def test_psi_weights_match_coefficient_moduli():
    """Test the derived and printed |psi|^2 weights against each other."""
    p2 = at_phi(0.8, x2=1.3)
    state = conditional_coefficients(SRC, p2)
    assert math.isclose(psi_weight(SRC, p2, 1), abs(state.c_plus) ** 2, rel_tol=1e-12)
    assert math.isclose(psi_weight(SRC, p2, -1), abs(state.c_minus) ** 2, rel_tol=1e-12)
    assert not math.isclose(psi_weight(SRC, p2, 1, "printed"), abs(state.c_plus) ** 2, rel_tol=1e-3)


def test_conditional_grid_columns_normalized():
    """Test that every conditional column integrates to one."""
    grid = conditional_tomogram(SRC, at_phi(math.pi / 2), THETA_AXIS, X_AXIS)
    assert grid.normalized
    assert grid.kind == "conditional"
    assert grid.conditioning == at_phi(math.pi / 2)
    assert np.max(np.abs(grid.column_integrals() - 1.0)) < 1e-6


def test_conditional_grid_matches_conditional_state():
    """Test the conditional grid against the conditional amplitude."""
    p2 = at_phi(1.45)
    grid = conditional_tomogram(SRC, p2, THETA_AXIS, X_AXIS)
    state = conditional_coefficients(SRC, p2)
    for i in (0, 9, 31, 50):
        expected = np.abs(conditional_amplitude(state, X_AXIS, THETA_AXIS[i])) ** 2
        assert np.max(np.abs(grid.values[i] - expected)) < 1e-8


@pytest.mark.parametrize("phi", [0.0, 0.3, math.pi / 2, 1.8, 3 * math.pi / 2])
@pytest.mark.parametrize("h", [0, 1])
def test_mandel_q_agrees_with_fock_oracle(phi, h):
    """Test the closed-form Mandel Q against the Fock oracle."""
    src = CatSource(alpha_sq=10.0, delta=0.2, h=h)
    p2 = at_phi(phi)
    projected, _ = project_quadrature(entangled_output(src, default_truncation(10.0)), "d", p2.X, p2.theta)
    closed = conditional_mandel_q(conditional_coefficients(src, p2))
    assert abs(closed - mandel_q(projected)) < 1e-8


def test_mandel_q_of_pure_coherent_component():
    """Test that a single coherent component has Q = 0."""
    state = ConditionalState(c_plus=1 + 0j, c_minus=0j, beta=SRC.beta, norm=1.0)
    assert conditional_mandel_q(state) == 0.0


def test_mandel_q_of_even_cat_is_positive():
    """Test Q of the even cat against 2|beta|^2 / sinh(2|beta|^2)."""
    beta = complex(math.sqrt(5.0))
    overlap = math.exp(-10.0)
    state = ConditionalState(c_plus=1 + 0j, c_minus=1 + 0j, beta=beta, norm=math.sqrt(2.0 + 2.0 * overlap))
    q = conditional_mandel_q(state)
    assert q > 0
    assert math.isclose(q, 10.0 / math.sinh(10.0), rel_tol=1e-10)


def test_mandel_q_symmetric_about_pi():
    """Test that Q is symmetric under phi -> 2 pi - phi."""
    for phi in (0.2, 0.9, 1.5, 2.4, 3.0):
        q = conditional_mandel_q(conditional_coefficients(SRC, at_phi(phi)))
        mirrored = conditional_mandel_q(conditional_coefficients(SRC, at_phi(2 * math.pi - phi)))
        assert abs(q - mirrored) < 1e-9


def test_separable_conditional_grid_ignores_outcome():
    """Test that the separable baseline does not depend on the mode-d outcome."""
    axes = (THETA_AXIS, X_AXIS)
    first = separable_conditional_tomogram(SRC.beta_mag, SRC.delta, QuadraturePoint(X=2.0, theta=0.1), *axes)
    second = separable_conditional_tomogram(SRC.beta_mag, SRC.delta, QuadraturePoint(X=-1.0, theta=3.0), *axes)
    assert first.kind == "separable"
    assert np.allclose(first.values, second.values, rtol=1e-12, atol=1e-15)
