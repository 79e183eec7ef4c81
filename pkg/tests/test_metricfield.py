"""Tests for metric fields, norms, families and curvature."""
import numpy as np
import pytest

from src.metricfield import (
    CoordinateBox,
    FieldKind,
    FiberAtlas,
    MetricFamily,
    MetricField,
    ModelChart,
    PlaneSpec,
    Profile,
    blend,
    chart_pullback,
    ck_seminorm,
    ck_seminorm_witness,
    curvature_data,
    family_from_variable_field,
    hyperbolic_model,
    is_c_bounded,
    is_eps_hyperbolic,
    is_eps_slow,
    measure_slowness,
    model_curvature_panel,
    model_fields,
    radial_reach,
    riemann_curvature,
    sectional_curvature,
    sectional_curvatures,
    warped_sectional,
)
from src.metricfield.families import bound_constants, bounding_constant, slowness_factor, sphere_bound_constant
from src.metricfield.finite_differences import multi_indices
from src.metricfield.norms import blend_bound, scalar_ck_norm
from src.utils.errors import (
    BoundaryError,
    DegeneratePlaneError,
    MetricValidationError,
    ParameterError,
    ResolutionError,
)


def _ones(x, t):
    return np.ones(x.shape[:-1] + (1, 1))


def _round_s2(x, t):
    atlas = FiberAtlas.sphere(2)
    chart = atlas.charts[0]
    return chart.pullback(x, atlas.round_form(chart.embed(x)))


def _half_plane(x, t):
    y = x[..., 1]
    return np.eye(2) / (y ** 2)[..., None, None]


def _scaled_model(chart, factor):
    n = chart.n

    def fiber(x, t):
        return factor * np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n))

    return MetricField.warped(chart.box, np.exp, fiber, chart=chart)


def _random_points(rng, lower, upper, count):
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    return lower + (upper - lower) * rng.uniform(size=(count, len(lower)))


# --- charts and stencils -----------------------------------------------------

def test_model_chart_domain():
    """The chart box is [-1, 1]^n x [-(1 + xi), 1 + xi]."""
    chart = ModelChart(n=2, xi=0.5, grid_step=0.25)

    assert chart.box.lower == (-1.0, -1.0, -1.5)
    assert chart.box.upper == (1.0, 1.0, 1.5)
    assert chart.in_domain(np.array([0.5, 0.5, 1.4]))
    assert not chart.in_domain(np.array([0.9, 0.9, 0.0]))


def test_model_chart_rejects_coarse_grid():
    """Fewer than four layers per axis is a resolution error."""
    with pytest.raises(ResolutionError):
        ModelChart(n=1, xi=0.5, grid_step=0.75)


def test_refined_grid_keeps_coarse_nodes(chart_1d):
    """Every coarse node is a node of the refined grid."""
    for coarse, fine in zip(chart_1d.axes(), chart_1d.axes(refine=True)):
        assert np.allclose(fine[::2], coarse)


def test_multi_indices_order_two():
    """Orders 0, 1 and 2 in two variables give 1 + 2 + 3 indices."""
    indices = multi_indices(2, 2)

    assert len(indices) == 6
    assert indices[0] == (0, 0)
    assert (1, 1) in indices and (2, 0) in indices


# --- seminorms ---------------------------------------------------------------

def test_seminorm_of_identical_fields_is_zero(chart_1d):
    """Test that identical fields are at seminorm distance zero."""
    sigma = hyperbolic_model(chart_1d)

    assert ck_seminorm(sigma, sigma, 2) == 0.0


def test_seminorm_of_constant_perturbation(chart_1d):
    """Adding c dt^2 moves the C^0 norm by |c|."""
    sigma = hyperbolic_model(chart_1d)
    bump = np.diag([0.0, -0.3])
    shifted = MetricField.on_chart(chart_1d, lambda p: sigma(p) + bump)

    assert ck_seminorm(sigma, shifted, 0) == pytest.approx(0.3, abs=1e-15)


def test_seminorm_matches_exponential_derivatives(chart_1d):
    """|1.01 e^{2t} dx^2 - e^{2t} dx^2|_{C^2} = 0.04 e^{2 t_max} on the interior."""
    sigma = hyperbolic_model(chart_1d)
    witness = ck_seminorm_witness(_scaled_model(chart_1d, 1.01), sigma, 2)
    t_max = witness.point[-1]
    expected = 0.04 * np.exp(2.0 * t_max)

    assert witness.multi_index == (0, 2)
    assert t_max == pytest.approx(1.75)
    assert abs(witness.value - expected) <= witness.budget + 1e-6 * expected


def test_seminorm_rejects_third_order(chart_1d):
    """Test that orders above two are rejected."""
    sigma = hyperbolic_model(chart_1d)

    with pytest.raises(ResolutionError):
        ck_seminorm(sigma, sigma, 3)


def test_seminorm_needs_a_chart():
    """Test that a seminorm without a chart is rejected."""
    box = CoordinateBox((-1.0, -1.0), (1.0, 1.0))
    flat = MetricField(domain=box, evaluator=lambda p: np.broadcast_to(np.eye(2), p.shape[:-1] + (2, 2)))

    with pytest.raises(ParameterError):
        ck_seminorm(flat, flat, 0)


def test_model_is_eps_hyperbolic(chart_1d):
    """Test that the model field is eps-hyperbolic."""
    result = is_eps_hyperbolic(hyperbolic_model(chart_1d), 1e-12)

    assert result.passed
    assert result.norm == 0.0


def test_doubled_fiber_is_not_hyperbolic(chart_2d):
    """e^{2t}(2 sigma) + dt^2 is at distance >= e^{-2(1 + xi)} from sigma."""
    result = is_eps_hyperbolic(_scaled_model(chart_2d, 2.0), 0.1)

    assert not result.passed
    assert result.norm >= np.exp(-2.0 * (1.0 + chart_2d.xi))


def test_blend_respects_combination_bound(chart_1d):
    """A blend of eps_i-hyperbolic fields stays within 4 |lambda| (eps_1 + eps_2)."""
    sigma = hyperbolic_model(chart_1d)

    def perturbed(amplitude, phase):
        def evaluator(p):
            g = sigma(p)
            g[..., 0, 0] += amplitude * np.cos(p[..., 0] + phase) * (1.0 + 0.1 * p[..., 1])
            return g

        return MetricField.on_chart(chart_1d, evaluator, kind=FieldKind.WARPED_VARIABLE)

    f1 = perturbed(1e-3, 0.0)
    f2 = perturbed(2e-3, 1.0)
    weight = lambda p: 0.5 + 0.4 * np.sin(2.0 * p[..., 0])  # noqa: E731
    eps1 = ck_seminorm(f1, sigma)
    eps2 = ck_seminorm(f2, sigma)
    lam_norm = scalar_ck_norm(chart_1d, weight)

    mixed = blend(f1, f2, weight)

    assert mixed.kind == FieldKind.WARPED_VARIABLE
    assert ck_seminorm(mixed, sigma) <= blend_bound(lam_norm, eps1, eps2)


def test_radial_reach_of_model(chart_1d):
    """Points of the model lie within 2 + xi of the center."""
    length, bound = radial_reach(hyperbolic_model(chart_1d))

    assert bound == pytest.approx(2.0 + chart_1d.xi)
    assert length <= bound


def test_radial_reach_of_perturbed_field(chart_1d):
    """Test how far a perturbation reaches radially."""
    sigma = hyperbolic_model(chart_1d)
    field = MetricField.on_chart(chart_1d, lambda p: sigma(p) * (1.0 + 0.01 * np.sin(p[..., :1, None])))

    length, bound = radial_reach(field)

    assert length <= bound


# --- fields ------------------------------------------------------------------

def test_validate_accepts_model(chart_2d):
    """Test that validation accepts the model field."""
    hyperbolic_model(chart_2d).validate()


def test_validate_rejects_indefinite_field(chart_1d):
    """Test that validation rejects an indefinite field."""
    bad = MetricField.on_chart(
        chart_1d,
        lambda p: np.broadcast_to(np.diag([1.0, -1.0]), p.shape[:-1] + (2, 2)).copy(),
    )

    with pytest.raises(MetricValidationError):
        bad.validate()


def test_validate_rejects_broken_radial_row(chart_1d):
    """Test that validation rejects a broken radial row."""
    sigma = hyperbolic_model(chart_1d)

    def tilted(p):
        g = sigma(p)
        g[..., 0, 1] = g[..., 1, 0] = 1e-3
        return g

    field = MetricField.on_chart(chart_1d, tilted, kind=FieldKind.WARPED_VARIABLE)

    with pytest.raises(MetricValidationError):
        field.validate()


def test_tabulated_field_interpolates(chart_1d):
    """A cubic table of sigma reproduces it between nodes."""
    sigma = hyperbolic_model(chart_1d)
    axes = [np.linspace(-1.0, 1.0, 21), np.linspace(-2.0, 2.0, 41)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    table = MetricField.from_samples(axes, sigma(grid), chart=chart_1d)
    points = np.array([[0.13, 0.27], [-0.55, 1.31]])

    assert table.kind == FieldKind.TABULATED
    assert np.allclose(table(points), sigma(points), rtol=1e-4)


def test_sample_rows_are_row_major(chart_1d):
    """Test that sampled rows come out in row-major order."""
    rows = hyperbolic_model(chart_1d).sample_rows(np.array([[0.0, 0.5]]))

    assert rows[0]["x1"] == 0.5
    assert rows[0]["g00"] == pytest.approx(np.exp(1.0))
    assert rows[0]["g01"] == 0.0 and rows[0]["g11"] == 1.0


# --- families ----------------------------------------------------------------

def test_constant_circle_family_is_two_bounded():
    """Test that the constant circle family is 2-bounded."""
    fam = MetricFamily.constant(FiberAtlas.circle())

    assert is_c_bounded(fam, 2.0)


def test_large_multiple_is_not_bounded():
    """Test that a large multiple of the round metric is not bounded."""
    fam = MetricFamily.constant(FiberAtlas.circle(), 100.0)

    assert not is_c_bounded(fam, 2.0)


def test_interpolation_family_bounded_by_claim_constant():
    """sigma_0 + s (4 sigma - sigma_0) is [n! (c_* + c')^{n+1}]^n-bounded."""
    atlas = FiberAtlas.circle()
    fam = MetricFamily.interpolation(atlas, 4.0)
    c_star, c_prime = 4.5, 2.0
    c_claim = (1.0 * (c_star + c_prime) ** 2) ** 1

    assert is_c_bounded(MetricFamily.constant(atlas, 4.0), c_star)
    assert is_c_bounded(fam, c_claim)


def test_sphere_bound_constant_covers_gnomonic_charts():
    """Test the sphere bound constant on the gnomonic charts."""
    c = sphere_bound_constant(2, per_axis=9)
    norm, min_det = bound_constants(MetricFamily.constant(FiberAtlas.sphere(2)), t_samples=2, per_axis=9)

    assert norm < c and min_det > 1.0 / c
    assert min_det == pytest.approx(1.0 / 27.0, rel=1e-12)


def test_sphere_bound_constant_satisfies_its_own_predicate():
    """Test that the sphere's constant is accepted by the c-boundedness check."""
    fam = MetricFamily.constant(FiberAtlas.sphere(2))
    c = sphere_bound_constant(2, per_axis=9)

    assert is_c_bounded(fam, c, t_samples=2, per_axis=9)


@pytest.mark.parametrize("norm, min_det", [(3.0, 1.0 / 27.0), (27.0, 0.5), (0.2, 2.0)])
def test_bounding_constant_clears_both_strict_bounds(norm, min_det):
    """Test that the bounding constant is strictly above the norm and 1/min_det."""
    c = bounding_constant(norm, min_det)

    assert c > 1.0
    assert norm < c
    assert min_det > 1.0 / c


def test_constant_family_is_slow_for_any_eps():
    """Test that a constant family is slow for any eps."""
    fam = MetricFamily.constant(FiberAtlas.sphere(1))

    assert is_eps_slow(fam, 1e-6)
    assert measure_slowness(fam).value < 1e-9


def test_reparametrized_family_slowness():
    """s -> g_{phi(s)} with |phi'|, |phi''| < a is (a + a^2) eps-slow."""
    base = MetricFamily.interpolation(FiberAtlas.sphere(1), 4.0)
    eps = measure_slowness(base).value
    phi = lambda s: s + 0.3 * np.sin(s)  # noqa: E731
    a = 1.35

    reparam = base.reparametrize(phi, (0.05, 0.7))

    assert eps > 0.0
    assert measure_slowness(reparam).value <= (a + a ** 2) * eps


def test_variable_field_yields_slow_bounded_family(chart_1d):
    """An eps-hyperbolic variable field has an (a' eps)-slow, 2-bounded fiber family."""
    sigma = hyperbolic_model(chart_1d)

    def evaluator(p):
        g = sigma(p)
        g[..., 0, 0] += 1e-3 * np.cos(p[..., 0]) * (1.0 + 0.1 * p[..., 1])
        return g

    field = MetricField.on_chart(chart_1d, evaluator, kind=FieldKind.WARPED_VARIABLE)
    eps = ck_seminorm(field, sigma)
    fam = family_from_variable_field(field)

    assert eps < 1.0 / (4.0 * np.exp(2.0 * (1.0 + chart_1d.xi)))
    assert is_c_bounded(fam, 2.0)
    assert measure_slowness(fam).value <= slowness_factor(1, chart_1d.xi) * eps


# --- pullback charts ---------------------------------------------------------

def test_pullback_is_identity_at_origin(chart_1d):
    """Test that the chart pullback is the identity at the origin."""
    atlas = FiberAtlas.sphere(1)
    chart = atlas.charts[0]
    fam = MetricFamily.constant(atlas)
    cut = lambda y, t: np.exp(2.0 * t)[..., None, None] * fam.chart_metric(chart, y, t)  # noqa: E731

    pb = chart_pullback(cut, np.array([0.2]), 5.0, chart_1d)

    assert np.allclose(pb.field(np.zeros(2)), np.eye(2), atol=1e-14)
    assert np.allclose(pb.image(np.zeros(2)), [0.2, 5.0])


def test_sinh_pullback_far_out_is_hyperbolic(chart_1d):
    """Test that the sinh pullback is hyperbolic far out."""
    cut = lambda y, t: (np.sinh(t) ** 2)[..., None, None] * np.ones(y.shape[:-1] + (1, 1))  # noqa: E731

    pb = chart_pullback(cut, np.array([0.0]), 15.0, chart_1d)

    assert pb.deviation().value < 1e-9


# --- curvature ---------------------------------------------------------------

def test_flat_metric_has_zero_curvature(rng):
    """Test that the flat metric has zero curvature."""
    box = CoordinateBox((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))
    flat = MetricField(domain=box, evaluator=lambda p: np.broadcast_to(np.eye(3), p.shape[:-1] + (3, 3)))

    riemann = riemann_curvature(flat, np.array([0.1, -0.2, 0.3]))

    assert np.max(np.abs(riemann)) < 1e-8


@pytest.mark.parametrize("n", [1, 2])
def test_exponential_model_curvature(rng, n):
    """Test the curvature of the horospherical model."""
    chart = ModelChart(n=n, xi=1.0, grid_step=0.25)
    field = hyperbolic_model(chart)
    points = _random_points(rng, [-0.5] * n + [-1.5], [0.5] * n + [1.5], 200)
    u = rng.normal(size=(200, n + 1))
    v = rng.normal(size=(200, n + 1))

    curvatures = sectional_curvatures(field, points, u, v)

    assert np.max(np.abs(curvatures + 1.0)) < 1e-3


@pytest.mark.parametrize("n", [1, 2])
def test_polar_model_curvature(rng, n):
    """Test the curvature of the polar model."""
    fiber = _ones if n == 1 else _round_s2
    box = CoordinateBox(tuple([-0.8] * n + [0.5]), tuple([0.8] * n + [6.0]))
    field = MetricField.warped(box, np.sinh, fiber)
    points = _random_points(rng, [-0.7] * n + [0.6], [0.7] * n + [5.9], 200)
    u = rng.normal(size=(200, n + 1))
    v = rng.normal(size=(200, n + 1))

    curvatures = sectional_curvatures(field, points, u, v)

    assert np.max(np.abs(curvatures + 1.0)) < 1e-3


@pytest.mark.parametrize("n", [1, 2])
def test_extension_model_curvature(rng, n):
    """cosh^2(t) sigma_{H^n} + dt^2 is hyperbolic."""
    if n == 1:
        fiber = _ones
        box = CoordinateBox((-1.0, -2.0), (1.0, 2.0))
        lower, upper = [-0.9, -1.9], [0.9, 1.9]
    else:
        fiber = _half_plane
        box = CoordinateBox((-1.0, 0.5, -2.0), (1.0, 2.0, 2.0))
        lower, upper = [-0.9, 0.6, -1.9], [0.9, 1.9, 1.9]
    field = MetricField.warped(box, np.cosh, fiber)
    points = _random_points(rng, lower, upper, 200)
    u = rng.normal(size=(200, n + 1))
    v = rng.normal(size=(200, n + 1))

    curvatures = sectional_curvatures(field, points, u, v)

    assert np.max(np.abs(curvatures + 1.0)) < 1e-3


def test_round_sphere_curvature_and_symmetries():
    """Test the round sphere curvature and the tensor symmetries."""
    box = CoordinateBox((-1.0, 0.2), (1.0, 2.9))
    sphere = MetricField.warped(box, np.sin, _ones)
    point = np.array([0.3, 1.1])

    data = curvature_data(sphere, point)
    lowered = data.lowered()[0]

    assert sectional_curvature(sphere, PlaneSpec.coordinate(point, 0, 1)) == pytest.approx(1.0, abs=1e-4)
    assert np.allclose(lowered, -np.swapaxes(lowered, 0, 1), atol=1e-6)
    assert np.allclose(lowered, -np.swapaxes(lowered, 2, 3), atol=1e-6)


def test_cosh_product_mixed_plane():
    """cosh^2(v) du^2 + dv^2 has curvature -1."""
    box = CoordinateBox((-1.0, -2.0), (1.0, 2.0))
    field = MetricField.warped(box, np.cosh, _ones)

    value = sectional_curvature(field, PlaneSpec(np.array([0.2, 0.7]), np.array([1.0, 1.0]), np.array([0.0, 1.0])))

    assert value == pytest.approx(-1.0, abs=1e-4)


def test_curvature_stays_finite_far_out():
    """Large radii do not overflow thanks to the unit-diagonal frame."""
    box = CoordinateBox((-1.0, 300.0), (1.0, 360.0))
    field = MetricField.warped(box, np.sinh, _ones)

    value = sectional_curvature(field, PlaneSpec.coordinate(np.array([0.0, 340.0]), 0, 1), h=1e-2)

    assert value == pytest.approx(-1.0, abs=1e-3)


def test_curvature_boundary_error():
    """Test that stencils leaving the chart raise BoundaryError."""
    box = CoordinateBox((-1.0, 0.5), (1.0, 2.0))
    field = MetricField.warped(box, np.sinh, _ones)

    with pytest.raises(BoundaryError):
        riemann_curvature(field, np.array([0.0, 0.5005]))


def test_degenerate_plane_error():
    """Test that a degenerate plane raises DegeneratePlaneError."""
    box = CoordinateBox((-1.0, 0.5), (1.0, 2.0))
    field = MetricField.warped(box, np.sinh, _ones)
    point = np.array([0.0, 1.0])

    with pytest.raises(DegeneratePlaneError):
        sectional_curvature(field, PlaneSpec(point, np.array([1.0, 2.0]), np.array([2.0, 4.0])))


@pytest.mark.parametrize(
    "profile, fiber_curvature",
    [(Profile.sinh(), 1.0), (Profile.exp(), 0.0), (Profile.cosh(), -1.0)],
)
def test_warped_sectional_models(profile, fiber_curvature):
    """Test the closed-form warped sectional curvatures."""
    t = np.linspace(0.5, 5.0, 10)

    radial, fiber = warped_sectional(profile, fiber_curvature, t)

    assert np.allclose(radial, -1.0)
    assert np.allclose(fiber, -1.0)


def test_warped_sectional_agrees_with_finite_differences(rng):
    """Both curvature paths agree on a warped metric over the round S^2."""
    profile = Profile(
        value=lambda t: np.cosh(t) + t ** 2,
        d1=lambda t: np.sinh(t) + 2.0 * t,
        d2=lambda t: np.cosh(t) + 2.0,
    )
    box = CoordinateBox((-0.8, -0.8, 0.2), (0.8, 0.8, 3.2))
    field = MetricField.warped(box, profile, _round_s2)
    points = _random_points(rng, [-0.7, -0.7, 0.3], [0.7, 0.7, 3.1], 1000)
    e = np.eye(3)

    radial_fd = sectional_curvatures(field, points, e[0], e[2])
    fiber_fd = sectional_curvatures(field, points, e[0], e[1])
    radial, fiber = warped_sectional(profile, 1.0, points[:, 2])

    assert np.max(np.abs(radial_fd - radial)) < 1e-3
    assert np.max(np.abs(fiber_fd - fiber)) < 1e-3


# --- model panel -------------------------------------------------------------

def test_model_curvature_panel(rng):
    """Test the curvature panel of the three models."""
    checks, rows = model_curvature_panel(20, rng)

    assert [c.name for c in checks] == [
        "polar_n1",
        "horospherical_n1",
        "extension_n1",
        "polar_n2",
        "horospherical_n2",
        "extension_n2",
    ]
    assert all(c.passed for c in checks)
    assert len(rows) == 120


def test_model_fields_need_a_small_dimension():
    """Test that model fields reject large dimensions."""
    with pytest.raises(ParameterError):
        model_fields(3)
