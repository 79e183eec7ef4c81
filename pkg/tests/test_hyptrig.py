"""Tests for the hyperbolic right-triangle kernels."""
import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.hyptrig import (
    RightTriangle,
    adjacent_leg,
    angle_from_legs,
    asinh_exp,
    extension_to_polar,
    hypotenuse,
    identity_panel,
    leg_from_hyp_angle,
    log_cosh,
    log_sinh,
    polar_to_extension,
)
from src.hyptrig import hyperboloid
from src.utils.errors import DomainError

HALF_PI = 0.5 * math.pi


# --- log-domain helpers ------------------------------------------------------

def test_log_sinh_and_log_cosh_match_numpy():
    """Test the log-domain helpers against numpy on moderate inputs."""
    x = np.array([1e-3, 0.5, 1.0, 2.0, 10.0, 40.0])

    assert np.allclose(log_sinh(x), np.log(np.sinh(x)), rtol=1e-14, atol=1e-14)
    assert np.allclose(log_cosh(x), np.log(np.cosh(x)), rtol=1e-14, atol=1e-14)


def test_log_domain_survives_overflow():
    """Test the log-domain helpers where sinh and cosh overflow."""
    assert log_sinh(800.0) == pytest.approx(800.0 - math.log(2.0), rel=1e-15)
    assert log_cosh(-800.0) == pytest.approx(800.0 - math.log(2.0), rel=1e-15)
    assert asinh_exp(1000.0) == pytest.approx(1000.0 + math.log(2.0), rel=1e-15)
    assert asinh_exp(-2.0) == pytest.approx(math.asinh(math.exp(-2.0)), rel=1e-14)
    assert log_sinh(0.0) == -np.inf


# --- right triangles ---------------------------------------------------------

def test_degenerate_triangles():
    """Test the degenerate triangles at zero and right angles."""
    assert leg_from_hyp_angle(3.0, HALF_PI) == 3.0
    assert leg_from_hyp_angle(3.0, 0.0) == 0.0
    assert leg_from_hyp_angle(0.0, 1.0) == 0.0
    assert adjacent_leg(3.0, 0.0) == 3.0
    assert adjacent_leg(3.0, HALF_PI) == 0.0
    assert hypotenuse(2.5, 0.0) == 2.5
    assert hypotenuse(0.0, 1.5) == 1.5
    assert angle_from_legs(2.0, 2.0) == HALF_PI


def test_long_legs_stay_finite():
    """Test that very long legs stay finite."""
    s = hypotenuse(300.0, 400.0)

    assert s == pytest.approx(700.0 - math.log(2.0), rel=1e-14)
    assert leg_from_hyp_angle(600.0, 0.3) == pytest.approx(600.0 + math.log(math.sin(0.3)), rel=1e-14)


@pytest.mark.parametrize("call", [
    lambda: leg_from_hyp_angle(-1.0, 0.3),
    lambda: leg_from_hyp_angle(1.0, 2.0),
    lambda: adjacent_leg(1.0, -0.1),
    lambda: hypotenuse(-0.5, 1.0),
    lambda: angle_from_legs(2.0, 1.0),
    lambda: angle_from_legs(0.5, 0.0),
])
def test_domain_errors(call):
    """Test that out-of-domain arguments raise DomainError."""
    with pytest.raises(DomainError):
        call()


def test_arrays_broadcast():
    """Test that the kernels broadcast over arrays."""
    s = np.array([[1.0], [2.0]])
    beta = np.array([0.2, 0.4, 0.6])

    r = leg_from_hyp_angle(s, beta)

    assert r.shape == (2, 3)
    assert np.allclose(np.sinh(r), np.sin(beta) * np.sinh(s), rtol=1e-14)


@hyp_settings(max_examples=200, deadline=None)
@given(
    s=st.floats(min_value=0.1, max_value=20.0),
    beta=st.floats(min_value=0.01, max_value=HALF_PI - 0.01),
)
def test_polar_extension_round_trip(s, beta):
    """Test the round trip between polar and extension coordinates."""
    r, t = polar_to_extension(s, beta)
    s_back, beta_back = extension_to_polar(r, t)

    assert s_back == pytest.approx(s, rel=1e-12)
    assert beta_back == pytest.approx(beta, abs=1e-10)


def test_solved_triangle_is_valid():
    """Test that a solved right triangle satisfies its relations."""
    tri = RightTriangle.solve(3.0, 0.7)

    assert tri.is_valid()
    assert tri.alpha + tri.beta < HALF_PI
    assert tri.residuals()["cosh_law"] < 1e-14


# --- hyperboloid oracle ------------------------------------------------------

@pytest.mark.parametrize("s, beta", [(0.5, 0.3), (2.0, 0.6), (12.0, 1.2)])
def test_legs_match_the_hyperboloid_model(s, beta):
    """Test the legs against a construction in the hyperboloid model."""
    r_ref, t_ref = hyperboloid.triangle_from_hyp_angle(s, beta)
    r, t = polar_to_extension(s, beta)

    assert r == pytest.approx(r_ref, rel=1e-13)
    assert t == pytest.approx(t_ref, rel=1e-13)


def test_measured_triangle_matches_the_kernels():
    """Test a triangle measured on the hyperboloid against the kernels."""
    s_ref, beta_ref, alpha_ref = hyperboloid.measure_triangle(1.3, 2.1)
    s, beta = extension_to_polar(1.3, 2.1)

    assert s == pytest.approx(s_ref, rel=1e-13)
    assert beta == pytest.approx(beta_ref, abs=1e-12)
    assert angle_from_legs(2.1, s) == pytest.approx(alpha_ref, abs=1e-12)


# --- identity panel ----------------------------------------------------------

def test_identity_panel_passes():
    """Test that every identity check passes at the default tolerance."""
    checks = identity_panel(2000, 1e-10, seed=20240917)

    assert {c.name for c in checks} == {
        "cosh_law",
        "law_of_sines",
        "polar_round_trip",
        "extension_metric",
        "extension_radius",
        "tangent_law",
        "hyperboloid_oracle",
        "monotone_leg",
    }
    assert all(c.passed for c in checks)


def test_identity_panel_fails_at_zero_tolerance():
    """Test that a zero tolerance fails the identity panel."""
    checks = identity_panel(2000, 0.0, seed=1, oracle_samples=20)

    assert not all(c.passed for c in checks)


def test_identity_panel_on_a_benign_range():
    """Test the identity panel at a tight tolerance on short hypotenuses."""
    checks = identity_panel(2000, 1e-12, seed=2, s_range=(0.1, 1.0), oracle_samples=50)

    assert all(c.passed for c in checks)
