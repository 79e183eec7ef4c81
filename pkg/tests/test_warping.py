"""Tests for bumps, forcing, extension, reweighting and constants."""
import math

import numpy as np
import pytest

from src.metricfield import FiberAtlas, MetricFamily, MetricField, ModelChart, hyperbolic_model, sectional_curvatures
from src.metricfield.norms import ck_seminorm
from src.utils.errors import DomainError, ParameterError
from src.warping import (
    AffineBump,
    RadialMetric,
    WarpDescriptor,
    bump_scaled,
    certified_bounds,
    constants,
    extension_chart_panel,
    hyperbolic_extension,
    hyperbolic_forcing,
    increasing_in_c,
    radial_deviation,
    radius_chart_panel,
    ratio_panel,
    reindex_extension_family,
    reindexed_radius,
    rho,
    shift_limit,
    sinh_reweight,
    slow_family_panel,
    spherical_cut,
    unwarped_cut,
    warp_forcing,
)
from src.warping.constants import (
    forcing_bound,
    log_c1,
    log_c2,
    log_chart_constant,
    oracle_log_c2,
    oracle_log_chart_constant,
    warp_forcing_bound,
)
from src.warping.reweight import model_reweight_bound, reweight_bound


def _sphere_points(rng, dim, count):
    X = rng.normal(size=(count, dim + 1))
    return X / np.linalg.norm(X, axis=-1, keepdims=True)


def _circle():
    return FiberAtlas.circle()


# --- bumps -------------------------------------------------------------------

def test_rho_is_a_monotone_step():
    """Test that the bump is a monotone step."""
    x = np.linspace(-1.0, 2.0, 3001)
    values = rho(x)

    assert np.all(values[x <= 0.0] == 0.0)
    assert np.all(values[x >= 1.0] == 1.0)
    assert np.all(np.diff(values) >= 0.0)
    assert rho(0.5) == pytest.approx(0.5)


def test_rho_certified_bounds():
    """Test the certified bounds of the bump."""
    b1, b2 = certified_bounds()

    assert 2.0 <= b1 < 3.0
    assert b2 < 12.0


@pytest.mark.parametrize("a, d", [(0.0, 1.0), (40.0, 16.0), (3.0, 8.0)])
def test_bump_scaled_endpoints(a, d):
    """Test the scaled bump at its endpoints."""
    assert bump_scaled(a, d, a) == 0.0
    assert bump_scaled(a, d, a + d / 2.0) == 1.0
    assert bump_scaled(a, d, a - 1.0) == 0.0


def test_bump_scaled_derivative_bounds():
    """|rho_{a,d}'| < 6/d and |rho_{a,d}''| < 48/d^2 with d = 8."""
    bump = AffineBump.scaled(0.0, 8.0)
    t = np.linspace(-1.0, 5.0, 60001)

    assert np.max(np.abs(bump.d1(t))) < 0.75
    assert np.max(np.abs(bump.d2(t))) < 48.0 / 64.0
    assert bump.slope_bound == pytest.approx(0.75)


def test_bump_scaled_rejects_nonpositive_width():
    """Test that a non-positive bump width is rejected."""
    with pytest.raises(ParameterError):
        bump_scaled(1.0, 0.0, 1.0)


def test_local_bump():
    """Test the local bump."""
    bump = AffineBump.local(10.0)

    assert bump(10.0) == 1.0
    assert bump(9.0) == 1.0
    assert bump(10.5) == 0.0
    assert bump.support == (10.0, 10.5)


# --- radial metrics and forcing -------------------------------------------------

def test_polar_model_unwarped_cut_is_round(rng):
    """Test that the polar model has a round unwarped cut."""
    atlas = _circle()
    polar = RadialMetric.polar_hyperbolic(atlas)
    X = _sphere_points(rng, 1, 50)

    assert np.array_equal(unwarped_cut(polar, 7.0)(X), atlas.round_form(X))
    assert np.allclose(spherical_cut(polar, 2.0)(X), np.sinh(2.0) ** 2 * atlas.round_form(X))


def test_cut_outside_domain_raises():
    """Test that a cut outside the domain raises."""
    partial = RadialMetric.constant_cut(_circle(), _circle().round_form, t_min=10.0)

    with pytest.raises(DomainError):
        unwarped_cut(partial, 5.0)


def test_descriptor_with_exponential_profile(rng):
    """Test a radial metric with an exponential profile."""
    atlas = _circle()
    descriptor = WarpDescriptor(np.exp, MetricFamily.constant(atlas), (0.5, 20.0))
    X = _sphere_points(rng, 1, 10)

    assert np.allclose(spherical_cut(descriptor, 3.0)(X), np.exp(6.0) * atlas.round_form(X), rtol=1e-12)


def test_forcing_round_target_is_polar_everywhere(rng):
    """Test that forcing toward the round target is polar everywhere."""
    atlas = _circle()
    forced = hyperbolic_forcing(None, 40.0, 16.0, atlas)
    X = _sphere_points(rng, 1, 20)

    for r in (1.0, 40.0, 44.0, 60.0):
        assert np.array_equal(unwarped_cut(forced, r)(X), atlas.round_form(X))


def test_forcing_exact_regions(rng):
    """Test the exact regions of hyperbolic forcing."""
    atlas = _circle()
    forced = hyperbolic_forcing(1.25, 40.0, 16.0, atlas)
    X = _sphere_points(rng, 1, 20)
    sigma = atlas.round_form(X)

    assert np.array_equal(unwarped_cut(forced, 40.0)(X), sigma)
    assert np.array_equal(unwarped_cut(forced, 10.0)(X), sigma)
    assert np.array_equal(unwarped_cut(forced, 48.0)(X), 1.25 * sigma)
    assert np.array_equal(unwarped_cut(forced, 70.0)(X), 1.25 * sigma)
    assert not np.allclose(unwarped_cut(forced, 44.0)(X), sigma)


def test_forcing_requires_a_above_d():
    """Test that forcing requires a above d."""
    with pytest.raises(ParameterError):
        hyperbolic_forcing(1.25, 16.0, 16.0, _circle())


def test_forcing_is_hyperbolic_outside_ball():
    """Measured chart deviation stays below C_1 (e^{-r} + (12/d) eps_0)."""
    forced = hyperbolic_forcing(1.25, 40.0, 16.0, _circle())
    xi, r = 1.0, 38.0
    eps0 = math.exp(log_c2(1, 2.0 + 2.0))

    measured = radial_deviation(forced, xi, [40.0, 43.0, 46.0, 50.0])

    assert measured <= forcing_bound(2.0, 1, xi, r, 16.0, eps0)


def test_forced_metric_is_hyperbolic_inside_band():
    """Below t = a the forced metric is sinh^2(t) sigma + dt^2, so curvature -1."""
    atlas = FiberAtlas.sphere(2)
    forced = hyperbolic_forcing(1.25, 40.0, 16.0, atlas).to_radial()
    field = forced.chart_field(atlas.charts[0], (1.0, 5.0))
    rng = np.random.default_rng(7)
    points = np.concatenate([rng.uniform(-0.8, 0.8, (100, 2)), rng.uniform(1.5, 4.5, (100, 1))], axis=-1)

    curvatures = sectional_curvatures(field, points, rng.normal(size=(100, 3)), rng.normal(size=(100, 3)))

    assert np.max(np.abs(curvatures + 1.0)) < 1e-3


def test_warp_forcing_keeps_constant_cut(rng):
    """Test that warp forcing keeps a constant cut."""
    atlas = _circle()
    g = RadialMetric.constant_cut(atlas, lambda X: 1.25 * atlas.round_form(X))
    forced = warp_forcing(g, 20.0)
    X = _sphere_points(rng, 1, 20)

    for t in (5.0, 20.2, 20.4, 30.0):
        assert np.allclose(forced.unwarped_cut(X, t), g.unwarped_cut(X, t), rtol=1e-15, atol=1e-15)


def test_warp_forcing_exact_regions(rng):
    """Test the exact regions of warp forcing."""
    atlas = _circle()
    g = hyperbolic_forcing(1.25, 40.0, 16.0, atlas).to_radial()
    r0 = 42.0
    forced = warp_forcing(g, r0)
    X = _sphere_points(rng, 1, 20)
    frozen = g.unwarped_cut(X, r0)

    for t in (1.0, 30.0, r0):
        assert np.array_equal(forced.unwarped_cut(X, t), frozen)
    for t in (r0 + 0.5, 45.0, 60.0):
        assert np.array_equal(forced.unwarped_cut(X, t), g.unwarped_cut(X, t))


def test_warp_forcing_fills_partial_metric(rng):
    """Test that warp forcing fills a partial metric."""
    atlas = _circle()
    partial = RadialMetric.constant_cut(atlas, lambda X: 1.25 * atlas.round_form(X), t_min=10.0)

    forced = warp_forcing(partial, 12.0)

    X = _sphere_points(rng, 1, 5)
    assert forced.t_min == 0.0
    assert np.array_equal(forced.unwarped_cut(X, 3.0), partial.unwarped_cut(X, 12.0))
    with pytest.raises(DomainError):
        warp_forcing(partial, 5.0)


def test_warp_forcing_hyperbolicity():
    """An eps-hyperbolic metric of excess xi becomes eta-hyperbolic with excess xi - 1."""
    atlas = _circle()
    xi, r0 = 2.0, 20.0
    g = hyperbolic_forcing(1.25, 14.0, 8.0, atlas)
    eps = radial_deviation(g, xi, [18.0, 22.0, 26.0])

    eta = radial_deviation(warp_forcing(g, r0), xi - 1.0, [r0 - 1.0, r0, r0 + 0.25, r0 + 2.0])

    assert eta <= warp_forcing_bound(xi, r0, eps)


# --- extension ---------------------------------------------------------------

def test_extension_of_hyperbolic_plane_is_hyperbolic(rng):
    """Test that extending the hyperbolic plane stays hyperbolic."""
    polar = RadialMetric.polar_hyperbolic(_circle())
    extended = hyperbolic_extension(polar, 1)
    X = _sphere_points(rng, 2, 50)

    assert np.allclose(extended.unwarped_cut(X, 3.0), extended.atlas.round_form(X), atol=1e-14)

    chart = extended.atlas.charts[2]
    field = extended.chart_field(chart, (1.0, 4.0))
    points = np.concatenate([rng.uniform(-0.8, 0.8, (100, 2)), rng.uniform(1.5, 3.5, (100, 1))], axis=-1)
    curvatures = sectional_curvatures(field, points, rng.normal(size=(100, 3)), rng.normal(size=(100, 3)))
    assert np.max(np.abs(curvatures + 1.0)) < 1e-3


def test_extension_unwarped_cut_in_join_coordinates():
    """cos^2(beta) sigma_{S^{k-1}} + sin^2(beta) h_r + dbeta^2 with k = 2."""
    atlas = _circle()
    h = RadialMetric.constant_cut(atlas, lambda X: 1.25 * atlas.round_form(X))
    extended = hyperbolic_extension(h, 2)
    beta, phi, psi = 0.7, 0.3, 1.1
    theta = np.array([np.cos(phi), np.sin(phi)])
    theta_perp = np.array([-np.sin(phi), np.cos(phi)])
    u = np.array([np.cos(psi), np.sin(psi)])
    u_perp = np.array([-np.sin(psi), np.cos(psi)])
    X = np.concatenate([np.cos(beta) * theta, np.sin(beta) * u])
    Q = extended.unwarped_cut(X, 5.0)

    v_beta = np.concatenate([-np.sin(beta) * theta, np.cos(beta) * u])
    v_theta = np.concatenate([np.cos(beta) * theta_perp, np.zeros(2)])
    v_u = np.concatenate([np.zeros(2), np.sin(beta) * u_perp])

    assert v_beta @ Q @ v_beta == pytest.approx(1.0, abs=1e-14)
    assert v_theta @ Q @ v_theta == pytest.approx(np.cos(beta) ** 2, abs=1e-14)
    assert v_u @ Q @ v_u == pytest.approx(1.25 * np.sin(beta) ** 2, abs=1e-14)
    assert v_beta @ Q @ v_u == pytest.approx(0.0, abs=1e-14)


def test_iterated_extension_matches_single(rng):
    """Test that iterated extensions match a single extension."""
    atlas = _circle()
    h = hyperbolic_forcing(1.25, 4.0, 2.0, atlas)
    twice = hyperbolic_extension(hyperbolic_extension(h, 1), 1)
    once = hyperbolic_extension(h, 2)
    X = _sphere_points(rng, 3, 200)
    s = rng.uniform(0.5, 12.0, 200)

    assert np.max(np.abs(twice.unwarped_cut(X, s) - once.unwarped_cut(X, s))) < 1e-10


def test_extension_rejects_flat_fiber():
    """Test that extension rejects a flat fiber."""
    flat = RadialMetric.polar_hyperbolic(FiberAtlas.flat(1))

    with pytest.raises(ParameterError):
        hyperbolic_extension(flat, 1)


# --- reweighting -------------------------------------------------------------

def test_reweight_model_distance(chart_1d):
    """Test the sinh reweighting distance on the model."""
    sigma = hyperbolic_model(chart_1d)

    for t0 in (3.0, 5.0):
        assert ck_seminorm(sinh_reweight(sigma, t0), sigma) <= model_reweight_bound(chart_1d.xi, t0)


def test_reweight_fixes_zero_slice(chart_1d):
    """Test that reweighting fixes the zero slice."""
    sigma = hyperbolic_model(chart_1d)
    points = np.array([[0.3, 0.0], [-0.6, 0.0]])

    assert np.allclose(sinh_reweight(sigma, 4.0)(points), sigma(points), rtol=1e-15)


def test_reweight_perturbed_field(chart_1d):
    """Test reweighting a perturbed field."""
    sigma = hyperbolic_model(chart_1d)

    def evaluator(p):
        g = sigma(p)
        g[..., 0, 0] *= 1.0 + 1e-3 * np.sin(p[..., 0])
        return g

    field = MetricField.on_chart(chart_1d, evaluator)
    eps = ck_seminorm(field, sigma)

    assert ck_seminorm(sinh_reweight(field, 3.0), field) <= reweight_bound(eps, chart_1d.xi, 3.0)


def test_reweight_requires_large_t0(chart_1d):
    """Test that reweighting requires a large t0."""
    with pytest.raises(ParameterError):
        sinh_reweight(hyperbolic_model(chart_1d), 2.0)


def test_ratio_panel_holds():
    """Test that the ratio panel holds."""
    checks = ratio_panel()

    assert len(checks) == 24
    assert all(check.passed for check in checks)


# --- constants ---------------------------------------------------------------

def _fixed_spheres(m):
    return 2.0


def test_a_vanishes_at_c1_prime():
    """Test that a_next vanishes when eps equals C1'."""
    eps = math.exp(log_c1(2.0, 1, 2.0))

    table = constants(1, 2.0, 2.0, 2.0, eps, c_sphere=_fixed_spheres)

    assert table.values["a_next"] == pytest.approx(0.0, abs=1e-12)


def test_chart_constant_increases_with_c():
    """Test that the chart constant increases with c."""
    assert log_chart_constant(2.0, 2, 0.5) < log_chart_constant(3.0, 2, 0.5)
    assert increasing_in_c(1, 2.0)
    assert increasing_in_c(3, 0.5)


def test_constants_match_oracle():
    """Test the constants against a high-precision oracle."""
    n, xi, c = 1, 2.0, 2.0
    table = constants(n, xi, c, 2.0, 1e-3, k=1, c_sphere=_fixed_spheres)

    assert table.log_values["C"] == pytest.approx(oracle_log_chart_constant(c, n, xi), rel=1e-12)
    assert table.log_values["C1"] == pytest.approx(
        math.log(128.0) + oracle_log_chart_constant(16.0 * c, n, xi), rel=1e-12
    )
    assert table.log_values["C2"] == pytest.approx(oracle_log_c2(n, c), rel=1e-12)
    assert table.log_values["eps0"] == pytest.approx(oracle_log_c2(n, 4.0), rel=1e-12)
    assert table.log_values["C6"] == 18.0 + 6.0 * xi
    assert table.values["C"] == pytest.approx(math.exp(table.log_values["C"]), rel=1e-12)


def test_constants_in_higher_dimension():
    """Test the constants in dimension two, with the excess gap in log form."""
    table = constants(2, 0.5, 2.0, 3.0, 1e-2, k=2, c_sphere=_fixed_spheres)

    assert table.log_values["C"] == pytest.approx(oracle_log_chart_constant(2.0, 2, 0.5), rel=1e-12)
    assert table.values["R"] > 0.0
    assert table.log_values["excess_gap"] == pytest.approx(-table.values["R"] / 2.0, rel=1e-15)
    assert table.log_values["excess_gap"] < math.log(0.5)
    assert table.values["xi_smoothed"] <= 0.5
    assert table.values["C3"] > math.exp(11.0 + 2.0)


def test_constants_reject_bad_input():
    """Test that the constants reject bad input."""
    with pytest.raises(ParameterError):
        constants(1, 0.5, 1.0, 2.0, 1e-3, c_sphere=_fixed_spheres)


def test_constants_table_serializes():
    """Test that the constants table serializes."""
    table = constants(1, 2.0, 2.0, 2.0, 1e-3, c_sphere=_fixed_spheres)
    payload = table.model_dump_json()

    assert '"log_values"' in payload


# --- reindexing --------------------------------------------------------------

def test_reindex_identity_at_right_angle():
    """Test that reindexing is the identity at a right angle."""
    s = np.linspace(0.0, 30.0, 7)

    assert np.array_equal(reindex_extension_family(np.pi / 2, s), s)


def test_reindex_vanishes_at_origin():
    """Test that reindexing vanishes at the origin."""
    assert reindex_extension_family(0.4, 0.0) == 0.0


def test_reindex_rejects_bad_angle():
    """Test that reindexing rejects a bad angle."""
    with pytest.raises(DomainError):
        reindex_extension_family(0.0, 1.0)


@pytest.mark.parametrize("beta, beta0, b", [(np.pi / 3, np.pi / 4, 0.7), (0.3, 1.2, 2.0), (0.9, 0.9, 1.5)])
def test_reindexed_shift_limit(beta, beta0, b):
    """Test the limit of the reindexed shift."""
    shift = reindexed_radius(40.0, beta, b, beta0) - 40.0

    assert shift == pytest.approx(shift_limit(beta, b, beta0), abs=1e-6)


def test_shift_at_base_angle_is_b():
    """Test that the shift at the base angle is b."""
    assert shift_limit(0.8, 1.25, 0.8) == 1.25


# --- chart panels ------------------------------------------------------------

def test_radius_chart_panel_holds():
    """Test that the radius chart panel holds."""
    checks = radius_chart_panel()

    assert len(checks) == 6
    assert all(check.passed for check in checks)


def test_radius_chart_panel_needs_large_r0():
    """Test that the radius chart panel needs a large r0."""
    with pytest.raises(ParameterError):
        radius_chart_panel(r0_values=(5.0,))


def test_slow_family_panel_holds():
    """Test that the slow family panel holds."""
    fam = MetricFamily.interpolation(_circle(), 1.25, weight=AffineBump.scaled(3.0, 8.0), interval=(0.0, 12.0))

    checks = slow_family_panel(fam, 1.0, [2.0, 5.0, 8.0, 10.0])

    assert all(check.passed for check in checks)


def test_slow_family_panel_rejects_centers_outside():
    """Test that centers outside the interval are rejected."""
    fam = MetricFamily.constant(_circle(), interval=(0.0, 12.0))

    with pytest.raises(ParameterError):
        slow_family_panel(fam, 1.0, [1.0])


def test_extension_chart_panel_holds():
    """Test that the extension chart panel holds."""
    atlas = _circle()
    h = RadialMetric.constant_cut(atlas, lambda X: 1.25 * atlas.round_form(X))

    checks = extension_chart_panel(h)

    assert checks[0].name == "extension_excess"
    assert all(check.passed for check in checks)


def test_model_chart_of_polar_metric_is_close_to_sigma():
    """Test that the polar metric is close to sigma in the model chart."""
    polar = RadialMetric.polar_hyperbolic(_circle())

    assert radial_deviation(polar, 1.0, [15.0]) < 1e-9
    assert ModelChart(n=1, xi=1.0, grid_step=0.125).half_height == 2.0
