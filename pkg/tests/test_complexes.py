"""Tests for all-right complexes, cone geometry, patches, rays and cubification."""
import json
import math
from itertools import permutations

import numpy as np
import pytest

from src.complexes import (
    AllRightComplex,
    ComplexPoint,
    ConePoint,
    PatchKind,
    PatchLabel,
    PatchSystem,
    RayKind,
    absorption_is_stable,
    absorption_panel,
    angular_distance,
    builtin,
    circle_complex,
    classify_patch,
    cone_distance,
    cube_embedding,
    cubify,
    dnp_panel,
    face_list,
    in_cone_nbhd,
    link_cone_distance,
    link_cycle,
    load_complex,
    locate,
    patch_panel,
    polygon_suspension,
    ray_absorption,
    ray_classify,
    ray_member,
    sample_shell_points,
    simplex_complex,
    simplicial_link,
    validate,
    validate_cubes,
)
from src.complexes.cubify import cube_faces
from src.complexes.rays import trichotomy
from src.utils.errors import ComplexFormatError, ParameterError, StarMembershipError
from src.widths import RadiusSchedule, WidthSet


def _point(carrier, weights):
    return ComplexPoint.from_weights(carrier, weights)


# --- complexes -----------------------------------------------------------------

def test_octahedron_is_valid(octa):
    """Test that the octahedron is a valid all-right complex."""
    report = validate(octa)
    assert report.ok
    assert report.f_vector == [6, 12, 8]
    assert octa.euler_characteristic() == 2


def test_sixteen_cell_is_valid(sixteen):
    """Test that the 16-cell is a valid all-right complex."""
    report = validate(sixteen)
    assert report.ok
    assert report.f_vector == [8, 24, 32, 16]
    assert sixteen.euler_characteristic() == 0


def test_triangles_sharing_vertices_but_not_edge():
    """Test that triangles meeting in vertices without their edge are rejected."""
    bad = AllRightComplex.from_simplices(
        [[0], [1], [2], [3], [0, 2], [1, 2], [0, 3], [1, 3], [0, 1, 2], [0, 1, 3]],
        name="bad",
    )
    report = validate(bad)
    assert not report.ok
    rules = {v.rule for v in report.violations}
    assert "intersection" in rules
    assert "face_closure" in rules
    pair = next(v for v in report.violations if v.rule == "intersection")
    assert len(pair.simplices) == 2


def test_duplicate_simplex_is_reported():
    """Test that a repeated simplex is reported as a violation."""
    dup = AllRightComplex.from_simplices([[0], [1], [0, 1], [1, 0]])
    assert any(v.rule == "duplicate" for v in validate(dup).violations)


def test_generators():
    """Test the sizes of the builtin generators."""
    assert circle_complex(5).f_vector() == [5, 5]
    assert polygon_suspension(4).f_vector() == [6, 12, 8]
    assert polygon_suspension(5).euler_characteristic() == 2
    assert simplex_complex(3).f_vector() == [4, 6, 4, 1]
    with pytest.raises(ParameterError):
        polygon_suspension(3)


def test_builtin_names_and_json(tmp_path):
    """Test resolving builtin names and loading complexes from JSON."""
    assert builtin("16-cell").dim == 3
    assert builtin("suspension6").f_vector()[0] == 8
    with pytest.raises(ComplexFormatError):
        builtin("dodecahedron")

    path = tmp_path / "square.json"
    path.write_text(json.dumps({"name": "square", "facets": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
    square = load_complex(str(path))
    assert square.name == "square"
    assert validate(square).ok
    assert load_complex("octahedron").f_vector() == [6, 12, 8]

    broken = tmp_path / "broken.json"
    broken.write_text("{}")
    with pytest.raises(ComplexFormatError):
        load_complex(str(broken))


# --- links -----------------------------------------------------------------------

def test_vertex_link_of_octahedron_is_square(octa):
    """Test that a vertex link of the octahedron is a square."""
    link = simplicial_link([0], octa)
    assert link.f_vector() == [4, 4]
    assert len(link_cycle(link)) == 4


def test_edge_link_of_octahedron_is_two_points(octa):
    """Test that an edge link of the octahedron is two points."""
    link = simplicial_link([0, 2], octa)
    assert link.dim == 0
    assert link.simplices == frozenset({frozenset({4}), frozenset({5})})


def test_polygon_suspension_pole_link_length():
    """Test that a pole link of a polygon suspension is the polygon."""
    susp = polygon_suspension(5)
    assert len(link_cycle(susp.link([5]))) == 5


def test_link_of_link_identity(sixteen):
    """Test that the link of a link is a link of the larger simplex."""
    for big in sixteen.simplices:
        expected = sixteen.link(big).simplices
        for small in _proper_faces(big):
            inner = sixteen.link(small)
            assert inner.link(big - small).simplices == expected


def _proper_faces(simplex):
    verts = sorted(simplex)
    for mask in range(1, 2 ** len(verts) - 1):
        yield frozenset(v for i, v in enumerate(verts) if mask >> i & 1)


def test_link_of_non_simplex_raises(octa):
    """Test that asking for the link of a non-simplex raises."""
    with pytest.raises(ParameterError):
        octa.link([0, 1])


# --- cone geometry -------------------------------------------------------------------

def test_angular_distance_examples(octa):
    """Test angular distances against hand-computed values."""
    on_face = _point([0, 2], [1.0, 2.0])
    assert angular_distance(on_face, [0, 2], octa) == 0.0
    assert angular_distance(_point([4], [1.0]), [0, 2], octa) == pytest.approx(math.pi / 2)
    barycenter = _point([0, 2, 4], [1.0, 1.0, 1.0])
    assert angular_distance(barycenter, [0], octa) == pytest.approx(math.acos(1.0 / math.sqrt(3.0)), rel=1e-14)


def test_angular_distance_off_star_raises(octa):
    """Test that angular distance outside the closed star raises."""
    with pytest.raises(StarMembershipError):
        angular_distance(_point([1], [1.0]), [0], octa)


def test_cone_neighborhood_examples(octa):
    """Test cone neighborhood membership on hand-computed points."""
    tilted = _point([0, 2], [1.0, 1.0])
    p = ConePoint(tilted, 5.0)
    assert not in_cone_nbhd(p, [0], 1.0, octa)
    assert in_cone_nbhd(ConePoint(_point([0], [1.0]), 30.0), [0], 1e-6, octa)
    assert not in_cone_nbhd(ConePoint(_point([1], [1.0]), 3.0), [0], 100.0, octa)


def test_cone_neighborhood_slices(octa, rng):
    """Test that cone neighborhoods slice to angular neighborhoods."""
    beta = 0.2
    for _ in range(200):
        x = _point([0, 2, 4], rng.random(3) ** 3)
        gamma = angular_distance(x, [0], octa)
        if abs(gamma - beta) < 1e-9:
            continue
        s = float(rng.uniform(0.5, 30.0))
        width = math.asinh(math.sin(beta) * math.sinh(s))
        assert in_cone_nbhd(ConePoint(x, s), [0], width, octa) == (gamma < beta)


def test_link_distance_matches_cone_distance(octa, sixteen, rng):
    """Test that distances in the link cone match cone distances."""
    for complex_, face, simplex, carrier in (
        (octa, [0], [0, 2], [0, 2, 4]),
        (sixteen, [0], [0, 2], [0, 2, 4, 6]),
        (sixteen, [0, 2], [0, 2, 4], [0, 2, 4, 6]),
    ):
        for _ in range(50):
            p = ConePoint(_point(carrier, rng.random(len(carrier)) + 0.01), float(rng.uniform(0.1, 25.0)))
            direct = cone_distance(p, simplex, complex_)
            assert link_cone_distance(p, face, simplex, complex_) == pytest.approx(direct, rel=1e-10, abs=1e-12)


# --- patches -------------------------------------------------------------------------

def test_patch_system_needs_matching_dimension(sixteen, octa_schedule):
    """Test that a schedule of the wrong dimension is rejected."""
    with pytest.raises(ParameterError):
        PatchSystem(sixteen, octa_schedule)


def test_inside_ball_is_ball_only(octa, octa_schedule):
    """Test that points inside the removed ball carry only the ball label."""
    system = PatchSystem(octa, octa_schedule)
    p = ConePoint(_point([0, 2, 4], [1.0, 1.0, 1.0]), system.inner - 0.01)
    assert classify_patch(p, system) == [PatchLabel(PatchKind.BALL)]


def test_near_vertex_is_vertex_patch_only(octa, octa_schedule):
    """Test that points close to a vertex ray lie only in its patch."""
    system = PatchSystem(octa, octa_schedule)
    p = ConePoint(_point([0, 2], [1.0, 1e-5]), system.outer - 1.0)
    assert classify_patch(p, system) == [PatchLabel(PatchKind.Y, frozenset({0}))]
    far = ConePoint(p.point, system.outer + 1.0)
    assert set(classify_patch(far, system)) == {
        PatchLabel(PatchKind.Y, frozenset({0})),
        PatchLabel(PatchKind.X, frozenset({0})),
    }


def test_generic_direction_is_top_patch(octa, octa_schedule):
    """Test that generic far points lie in the top patch."""
    system = PatchSystem(octa, octa_schedule)
    p = ConePoint(_point([0, 2, 4], [1.0, 1.0, 1.0]), system.outer + 1.0)
    assert set(classify_patch(p, system)) == {PatchLabel(PatchKind.Y_TOP), PatchLabel(PatchKind.X_TOP)}


def _raw_labels(p, system):
    """Set-difference definitions evaluated one point at a time."""
    sch = system.schedule
    if p.s <= system.inner:
        return {PatchLabel(PatchKind.BALL)}
    faces = face_list(system.complex, system.m - 2)
    closed = {f: in_cone_nbhd(p, f, sch.r_mk(len(f) - 1), system.complex) for f in faces}
    labels = set()
    for f in faces:
        k = len(f) - 1
        lower = any(closed[g] for g in faces if len(g) - 1 < k)
        if in_cone_nbhd(p, f, sch.s(k), system.complex, open_=True) and not lower:
            labels.add(PatchLabel(PatchKind.Y, f))
    if not any(closed.values()):
        labels.add(PatchLabel(PatchKind.Y_TOP))
    return labels


@pytest.mark.parametrize("which,top", [("octahedron", 20.0), ("16-cell", 20.0)])
def test_vectorized_classifier_matches_definitions(which, top, rng):
    """Test the vectorized membership against the pointwise definitions."""
    complex_ = builtin(which)
    system = PatchSystem(complex_, RadiusSchedule.from_top(top, complex_.dim, 0.005, 1.1, 0.5))
    cloud = system.sample(400, rng)
    result = system.membership(cloud)
    for j in range(len(cloud)):
        p = cloud.point(j, complex_)
        fast = {label for label in result.labels_of(j) if label.kind not in (PatchKind.X, PatchKind.X_TOP)}
        assert fast == _raw_labels(p, system)


def test_patch_panel_on_octahedron(octa, octa_schedule, rng):
    """Test the sampled patch panel on the octahedron."""
    checks = patch_panel(PatchSystem(octa, octa_schedule), 20000, rng)
    failed = [c.name for c in checks if not c.passed]
    assert not failed
    assert {c.name for c in checks} >= {"patch_coverage_gap", "patch_crossing", "patch_s_disjoint"}


def test_patch_panel_on_sixteen_cell(sixteen, rng):
    """Test the sampled patch panel on the 16-cell."""
    schedule = RadiusSchedule.from_top(20.0, 3, 0.005, 1.1, 0.5)
    checks = patch_panel(PatchSystem(sixteen, schedule), 6000, rng)
    assert all(c.passed for c in checks)


def test_patch_panel_on_suspension(rng):
    """Test the sampled patch panel on a polygon suspension."""
    susp = polygon_suspension(5)
    schedule = RadiusSchedule.from_top(20.0, 2, 0.005, 1.1, 0.5)
    assert all(c.passed for c in patch_panel(PatchSystem(susp, schedule), 5000, rng))


# --- overlap sampling --------------------------------------------------------

@pytest.mark.parametrize("which", ["octahedron", "16-cell", "suspension5"])
def test_overlap_sampler_reaches_the_requested_count(which, rng):
    """Test that shell sampling collects exactly the requested number of overlap points."""
    complex_ = builtin(which)
    system = PatchSystem(complex_, RadiusSchedule.from_top(20.0, complex_.dim, 0.005, 1.1, 0.5))

    cloud, drawn = system.sample_overlaps(400, rng)

    assert len(cloud) == 400
    assert system.overlap_mask(cloud).all()
    assert drawn >= 400


def test_shell_points_mostly_land_on_overlaps(octa, octa_schedule, rng):
    """Test that most shell points lie in two Y patches, unlike the plain cone sampler."""
    system = PatchSystem(octa, octa_schedule)
    band = (system.inner, system.outer + 3.0)

    shell = sample_shell_points(octa, system.shells(), band, 2000, rng)

    assert system.overlap_mask(shell).mean() > 0.6


def test_overlap_sampler_respects_the_draw_budget(octa, octa_schedule, rng):
    """Test that the sampler stops when the draw budget runs out."""
    system = PatchSystem(octa, octa_schedule)

    cloud, drawn = system.sample_overlaps(500, rng, max_draws=100)

    assert drawn == 100
    assert len(cloud) < 500


def test_overlap_sampler_rejects_an_empty_request(octa, octa_schedule, rng):
    """Test that zero requested overlap points is a parameter error."""
    with pytest.raises(ParameterError):
        PatchSystem(octa, octa_schedule).sample_overlaps(0, rng)


@pytest.mark.parametrize("which", ["octahedron", "16-cell"])
def test_dnp_panel_admissible_pair(which, rng):
    """Test that an admissible width pair has disjoint neighborhoods."""
    b = WidthSet(varsigma=0.005, c=1.1)
    a = WidthSet.natural(0.005)
    checks = dnp_panel(builtin(which), b, a, 20000, rng)
    assert all(c.passed for c in checks)


def test_dnp_panel_detects_wide_pair(octa, rng):
    """Test that an overly wide pair is caught by the DNP panel."""
    b = WidthSet(varsigma=0.5, c=1.2)
    a = WidthSet(varsigma=0.5, c=0.01)
    checks = dnp_panel(octa, b, a, 5000, rng)
    assert not all(c.passed for c in checks)


# --- rays ------------------------------------------------------------------------------

def test_ray_on_simplex_is_eventually(octa):
    """Test that a ray through a simplex is eventually in its neighborhood."""
    verdict = ray_classify(_point([0], [1.0]), 2.0, [0], 0.1, octa)
    assert verdict.kind == RayKind.EVENTUALLY


def test_ray_boundary_case_is_unstable(octa):
    """Test that a ray on the neighborhood boundary is unstable."""
    verdict = ray_classify(_point([2], [1.0]), 0.0, [0], math.pi / 2, octa)
    assert verdict.kind == RayKind.UNSTABLY_DISJOINT
    assert trichotomy(math.log(0.3), 0.0, math.log(0.3)).kind == RayKind.UNSTABLY_DISJOINT


def test_ray_off_star_is_stably_disjoint(octa):
    """Test that a ray outside the star is stably disjoint."""
    verdict = ray_classify(_point([1], [1.0]), -1.0, [0], 0.5, octa)
    assert verdict.kind == RayKind.STABLY_DISJOINT


def test_ray_thresholds_match_membership(octa, rng):
    """Test ray thresholds against direct membership."""
    for _ in range(300):
        x = _point([0, 2, 4], rng.random(3) ** 4 + 1e-9)
        b = float(rng.uniform(-3.0, 3.0))
        alpha = float(rng.uniform(0.01, 0.6))
        verdict = ray_classify(x, b, [0], alpha, octa)
        for s in (10.0, 20.0, 40.0, 80.0):
            member = ray_member(x, b, [0], alpha, s, octa)
            if verdict.kind == RayKind.EVENTUALLY and s >= verdict.threshold:
                assert member
            if verdict.kind == RayKind.STABLY_DISJOINT and s > verdict.threshold:
                assert not member


def test_eventual_threshold_is_sharp(octa):
    """Test that the eventual threshold is sharp."""
    x = _point([0, 2], [1.0, 0.05])
    b = 0.5
    alpha = math.asin(0.1)
    verdict = ray_classify(x, b, [0], alpha, octa)
    assert verdict.kind == RayKind.EVENTUALLY
    assert verdict.threshold > 0.0
    assert not ray_member(x, b, [0], alpha, 0.9 * verdict.threshold, octa)
    assert ray_member(x, b, [0], alpha, 1.1 * verdict.threshold, octa)


def test_vertex_ray_is_absorbed_by_vertex_patch(octa, octa_schedule):
    """Test that a vertex ray is absorbed by the vertex patch."""
    label, threshold = ray_absorption(_point([0], [1.0]), 0.0, octa_schedule, octa)
    assert label == PatchLabel(PatchKind.Y, frozenset({0}))
    assert threshold == 0.0


def test_generic_ray_is_absorbed_by_top_patch(octa, octa_schedule):
    """Test that a generic ray is absorbed by the top patch."""
    label, _ = ray_absorption(_point([0, 2, 4], [1.0, 1.0, 1.0]), 0.0, octa_schedule, octa)
    assert label == PatchLabel(PatchKind.Y_TOP)


def test_deep_ray_stays_in_ball(octa, octa_schedule):
    """Test that a ray far below the schedule stays in the ball."""
    label, _ = ray_absorption(_point([0, 2, 4], [1.0, 1.0, 1.0]), -3.0, octa_schedule, octa)
    assert label.kind == PatchKind.BALL


@pytest.mark.parametrize("carrier,weights,b", [
    ([0], [1.0], 0.0),
    ([0, 2, 4], [1.0, 1.0, 1.0], 0.0),
    ([0, 2, 4], [1.0, 0.3, 0.0001], 0.5),
])
def test_absorption_is_stable(octa, octa_schedule, rng, carrier, weights, b):
    """Test that absorption does not change as the schedule grows."""
    assert absorption_is_stable(_point(carrier, weights), b, octa_schedule, octa, rng)


def test_absorption_panel_matches_membership(octa, rng):
    """Test the absorption panel against sampled membership."""
    checks = absorption_panel(octa, 1000, rng, varsigma=0.005, c=1.1, xi=0.5)
    assert len(checks) == 1
    assert checks[0].passed
    assert checks[0].details["checked"] > 1000


# --- cubification ---------------------------------------------------------------------

def test_cubify_segment_and_triangle():
    """Test cubical subdivision of a segment and a triangle."""
    segment = cubify(simplex_complex(1))
    assert segment.f_vector() == [3, 2]
    triangle = cubify(simplex_complex(2))
    assert len(triangle.cubes_of_dim(2)) == 3
    assert triangle.euler_characteristic() == 1


def test_cubify_octahedron(octa):
    """Test cubical subdivision of the octahedron."""
    cc = cubify(octa)
    assert len(cc.cubes_of_dim(2)) == 24
    assert cc.euler_characteristic() == 2
    assert all(count == 2 for count in cc.ridge_counts().values())
    assert validate_cubes(cc, closed=True).ok


@pytest.mark.parametrize("n", [2, 3])
def test_cubified_simplex_validates(n):
    """Test that the cubified simplex passes cube validation."""
    cc = cubify(simplex_complex(n))
    assert len(cc.top_cubes()) == n + 1
    assert validate_cubes(cc, closed=False).ok
    assert not validate_cubes(cc, closed=True).ok


def test_square_has_eight_proper_faces():
    """Test that a square cube has eight proper faces."""
    square = (frozenset({0}), frozenset({0, 1, 2}))
    assert len(cube_faces(square)) == 8


def test_cubify_is_equivariant():
    """Test that cubification commutes with vertex relabeling."""
    base = simplex_complex(2)
    cc = cubify(base)
    for perm in permutations(range(3)):
        mapping = dict(zip(range(3), perm))
        relabeled = AllRightComplex.from_facets([[mapping[v] for v in range(3)]])
        assert cubify(relabeled).cubes == cc.relabel(mapping)


def test_locate_inverts_embedding():
    """Test that locating a point inverts the cube embedding."""
    base = simplex_complex(2)
    cube = (frozenset({0}), frozenset({0, 1, 2}))
    x = cube_embedding(cube, [0.25, 0.5], base)
    assert x.sum() == pytest.approx(1.0)
    found, t = locate(x, base)
    assert found == cube
    assert np.allclose(t, [0.25, 0.5])
    assert np.linalg.norm(cube_embedding(cube, [0.25, 0.5], base, spherical=True)) == pytest.approx(1.0)
