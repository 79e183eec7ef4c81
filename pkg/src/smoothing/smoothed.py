"""
The smoothed cone metric G(P, r) for circles and polygon suspensions.

For m = 2 the patched metric is continued inside r_0 = r_{m-2}: the cut is frozen at
lambda = r_0 - 1/2 by warp forcing and blended to phi^* sigma_{S^2} across
[lambda - d, lambda - d/2] with d = d_3 - 1/2. Hence G equals the patched metric for
t >= r_0 and is hyperbolic for t <= r_0 - d_3.
"""
import math
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.complexes import AllRightComplex, ComplexPoint, ConePoint
from src.config import settings
from src.metricfield import FiberChart, sectional_curvatures
from src.models import CheckResult, SmoothingParams
from src.smoothing.cone_metric import (
    ConeMetric,
    Facet,
    Provenance,
    facet_coordinates,
    frame_facet,
    round_cut,
)
from src.smoothing.continuation import continuation_metric
from src.smoothing.dim1 import dim1_cone_metric, g_dim1_model
from src.smoothing.global_smoothing import GlobalSmoothing
from src.smoothing.patched import PatchedEvaluator, patched_metric
from src.utils.errors import ParameterError, UnsupportedDimensionError
from src.utils.logger import setup_logger
from src.warping import AffineBump, RadialMetric, hyperbolic_extension
from src.widths import RadiusSchedule

logger = setup_logger(__name__)


def band_width(params: SmoothingParams, i: int) -> float:
    """d_i, as a parameter error when it was not supplied."""
    try:
        return params.width(i)
    except IndexError as e:
        raise ParameterError(f"d_{i}", params.d, f"d_{i} supplied") from e


@dataclass(frozen=True)
class SurfaceSmoothing:
    """Everything the m = 2 construction is assembled from."""

    complex_: AllRightComplex
    params: SmoothingParams
    schedule: RadiusSchedule
    phi: GlobalSmoothing
    patched: ConeMetric
    lam: float
    d: float
    canonical_phi: bool

    @property
    def top(self) -> float:
        """r_0 = lambda + 1/2."""
        return self.lam + 0.5

    @classmethod
    def build(
        cls,
        complex_: AllRightComplex,
        params: SmoothingParams,
        phi: Optional[GlobalSmoothing] = None,
    ) -> "SurfaceSmoothing":
        """
        Raises:
            ParameterError: If d_3 is missing or lambda <= d
            UnsupportedDimensionError: If no global smoothing is given and P is not a polygon suspension
        """
        schedule = RadiusSchedule(params.r, 2, params.varsigma, params.c, params.xi)
        lam = schedule.r_k(0) - 0.5
        d = band_width(params, 3) - 0.5
        if not lam > d:
            raise ParameterError("lambda", lam, f"lambda > d_3 - 1/2 = {d:g}")
        canonical_phi = phi is None
        phi = phi or GlobalSmoothing.canonical(complex_)
        patched = patched_metric(complex_, schedule, params, smoothed_metric)
        return cls(
            complex_=complex_,
            params=params,
            schedule=schedule,
            phi=phi,
            patched=patched,
            lam=lam,
            d=d,
            canonical_phi=canonical_phi,
        )

    def model(self) -> Optional[RadialMetric]:
        """C_d(E_1(G(L-gon, r))) on the round S^2; only for the canonical map of a suspension."""
        if not self.canonical_phi:
            return None
        link = g_dim1_model(self.phi.sectors, self.params.r, band_width(self.params, 2))
        return continuation_metric(hyperbolic_extension(link, 1), self.lam, self.d)

    def radii(self, s: float) -> List[float]:
        """Radii at which the patched metric is read for a point at radius s."""
        if s >= self.top:
            return [s]
        if s >= self.lam:
            return [self.lam, s]
        if s >= self.lam - self.d:
            return [self.lam]
        return []

    def frame(self, p: ConePoint) -> Facet:
        evaluator: PatchedEvaluator = self.patched.evaluator  # type: ignore[assignment]
        faces = [
            label.simplex
            for s in self.radii(p.s)
            for label in evaluator.labels(ConePoint(p.point, s))
            if label.simplex
        ]
        return frame_facet(p.point, self.complex_, faces)

    def cut(self, p: ConePoint, facet: Facet) -> np.ndarray:
        t = p.s
        if t >= self.top:
            return self.patched.cut(p, facet).form
        if t >= self.lam:
            w = float(AffineBump.local(self.lam)(t))
            frozen = self.patched.cut(ConePoint(p.point, self.lam), facet).form
            if w == 1.0:
                return frozen
            moving = self.patched.cut(p, facet).form
            return moving if w == 0.0 else w * frozen + (1.0 - w) * moving
        w = float(AffineBump.scaled(self.lam - self.d, self.d)(t))
        round_form = self.phi.pullback_round(facet_coordinates(p.point, facet), facet)
        if w == 0.0:
            return round_form
        frozen = self.patched.cut(ConePoint(p.point, self.lam), facet).form
        return frozen if w == 1.0 else w * frozen + (1.0 - w) * round_form

    def metric(self) -> ConeMetric:
        return ConeMetric(
            complex_=self.complex_,
            provenance=Provenance.SMOOTHED,
            evaluator=lambda p, facet: self.cut(p, facet),
            label=f"G({self.complex_.name},r={self.params.r:g})",
            model=self.model(),
            framer=self.frame,
        )


def smoothed_metric(
    complex_: AllRightComplex,
    params: SmoothingParams,
    phi: Optional[GlobalSmoothing] = None,
) -> ConeMetric:
    """
    G(P, r) for a circle or a polygon suspension.

    Args:
        complex_: All-right complex of dimension 1 or 2
        params: Smoothing data; m = 1 uses d_2, m = 2 uses d_2 and d_3
        phi: Global smoothing of P (canonical map when omitted)

    Raises:
        UnsupportedDimensionError: For m >= 3, or m = 2 without a global smoothing
        ParameterError: If a needed width is missing
    """
    if complex_.dim == 1:
        return dim1_cone_metric(complex_, params.r, band_width(params, 2), phi)
    if complex_.dim == 2:
        return SurfaceSmoothing.build(complex_, params, phi).metric()
    raise UnsupportedDimensionError(complex_.dim, "smoothed metrics are built for circles and surfaces")


def random_cone_points(
    complex_: AllRightComplex,
    count: int,
    band: Tuple[float, float],
    rng: np.random.Generator,
) -> List[ConePoint]:
    """Cone points with a uniform facet, positive weights and s uniform in ``band``."""
    facets = [tuple(sorted(f)) for f in complex_.facets()]
    picks = rng.integers(len(facets), size=count)
    weights = np.abs(rng.standard_normal((count, complex_.dim + 1))) + 1e-3
    radii = rng.uniform(band[0], band[1], size=count)
    return [
        ConePoint(ComplexPoint.from_weights(facets[i], w), float(s))
        for i, w, s in zip(picks, weights, radii)
    ]


def _regions(complex_: AllRightComplex, params: SmoothingParams) -> Tuple[float, float]:
    """(radius beyond which G is the outer metric, radius below which G is hyperbolic)."""
    if complex_.dim == 1:
        return params.r, params.r - band_width(params, 2)
    data = SurfaceSmoothing.build(complex_, params)
    return data.top, data.top - band_width(params, 3)


def property_panel(
    complex_: AllRightComplex,
    params: SmoothingParams,
    samples: int,
    rng: np.random.Generator,
    tol: Optional[float] = None,
) -> Tuple[List[CheckResult], List[dict]]:
    """
    Exact-region, width-independence and representation checks of G(P, r).

    Outside the top radius G must equal the patched metric (sigma_CP for circles); inside
    the forcing ball it must equal phi^* sigma_{S^m}; appending widths must not change it.
    """
    tol = settings.exact_region_tol if tol is None else tol
    start = time.time()
    metric = smoothed_metric(complex_, params)
    phi = GlobalSmoothing.canonical(complex_)
    outer_radius, inner_radius = _regions(complex_, params)
    data = SurfaceSmoothing.build(complex_, params) if complex_.dim == 2 else None

    def outer_reference(p: ConePoint, facet: Facet) -> np.ndarray:
        if data is None:
            return round_cut(facet_coordinates(p.point, facet))
        return data.patched.cut(p, facet).form

    rows: List[dict] = []
    outer_gap = inner_gap = width_gap = ray_gap = 0.0
    extra = params.d + [params.d[-1]]
    widened = smoothed_metric(complex_, SmoothingParams(**{**params.model_dump(), "d": extra}))

    for p in random_cone_points(complex_, samples, (outer_radius, outer_radius + 3.0), rng):
        facet = metric.frame(p)
        gap = float(np.max(np.abs(metric.cut(p, facet).form - outer_reference(p, facet))))
        outer_gap = max(outer_gap, gap)
        rows.append({"region": "outer", "s": p.s, "gap": gap})

    for p in random_cone_points(complex_, samples, (max(0.05, inner_radius - 3.0), inner_radius), rng):
        facet = metric.frame(p)
        x = facet_coordinates(p.point, facet)
        gap = float(np.max(np.abs(metric.cut(p, facet).form - phi.pullback_round(x, facet))))
        inner_gap = max(inner_gap, gap)
        rows.append({"region": "inner", "s": p.s, "gap": gap})

    for p in random_cone_points(complex_, samples, (max(0.05, inner_radius - 1.0), outer_radius + 1.0), rng):
        facet = metric.frame(p)
        gap = float(np.max(np.abs(metric.cut(p, facet).form - widened.cut(p, facet).form)))
        width_gap = max(width_gap, gap)
        tensor = metric.tensor(p, facet)
        radial = np.zeros(len(tensor))
        radial[-1] = 1.0
        ray_gap = max(ray_gap, float(np.max(np.abs(tensor[-1] - radial))))
        rows.append({"region": "all", "s": p.s, "gap": gap})

    logger.info(
        "property sweep finished",
        complex=complex_.name,
        samples=samples,
        worst=max(outer_gap, inner_gap, width_gap),
        elapsed=round(time.time() - start, 3),
    )
    checks = [
        CheckResult.below("outer_region_exact", outer_gap, tol, f"G = outer metric for t >= {outer_radius:.6g}"),
        CheckResult.below("inner_region_hyperbolic", inner_gap, tol, f"G = phi^* sigma for t <= {inner_radius:.6g}"),
        CheckResult.below("extra_widths_unused", width_gap, 0.0, "G unchanged by appending d_i"),
        CheckResult.below("ray_structure", ray_gap, 0.0, "last row of the tensor is dt^2"),
    ]
    return checks, rows


def model_panel(
    complex_: AllRightComplex,
    params: SmoothingParams,
    samples: int,
    rng: np.random.Generator,
    tol: Optional[float] = None,
) -> Tuple[List[CheckResult], List[dict]]:
    """Facet-frame evaluation of G against phi^* of its model on the round sphere."""
    tol = settings.overlap_tol if tol is None else tol
    metric = smoothed_metric(complex_, params)
    phi = GlobalSmoothing.canonical(complex_)
    if metric.model is None:
        raise UnsupportedDimensionError(complex_.dim, "no model on the round sphere")
    outer_radius, inner_radius = _regions(complex_, params)
    rows: List[dict] = []
    worst = 0.0
    for p in random_cone_points(complex_, samples, (max(0.05, inner_radius - 2.0), outer_radius + 3.0), rng):
        facet = metric.frame(p)
        x = facet_coordinates(p.point, facet)
        image = phi.frame(x, facet)[0]
        model_form = metric.model.unwarped(image[None, :], np.array([p.s]))[0]
        gap = float(np.max(np.abs(metric.cut(p, facet).form - phi.pullback(x, facet, model_form))))
        worst = max(worst, gap)
        rows.append({"s": p.s, "gap": gap})
    return [CheckResult.below("model_agreement", worst, tol, "max |G - phi^* G_model|")], rows


def independence_panel(
    complex_: AllRightComplex,
    params: SmoothingParams,
    xi: float,
    c: float,
    samples: int,
    rng: np.random.Generator,
    tol: float = 1e-10,
) -> Tuple[List[CheckResult], List[dict]]:
    """
    Compare G under (xi, c) and under the alternative pair, with varsigma fixed.

    Points are drawn outside B_{r_{m-2} - (2 + xi_max)}, where both constructions are defined.
    """
    other = SmoothingParams(**{**params.model_dump(), "xi": xi, "c": c})
    first, second = smoothed_metric(complex_, params), smoothed_metric(complex_, other)
    if complex_.dim == 1:
        lower = 0.05
        upper = params.r + 3.0
    else:
        top = RadiusSchedule(params.r, 2, params.varsigma, params.c, params.xi).r_k(0)
        lower = top - (2.0 + max(params.xi, xi)) + 1e-6
        upper = top + 3.0
    rows: List[dict] = []
    worst = 0.0
    for p in random_cone_points(complex_, samples, (lower, upper), rng):
        facet = first.frame(p)
        gap = float(np.max(np.abs(first.cut(p, facet).form - second.cut(p, facet).form)))
        worst = max(worst, gap)
        rows.append({"s": p.s, "gap": gap})
    check = CheckResult.below(
        "parameter_independence",
        worst,
        tol,
        f"|G(xi={params.xi:g}, c={params.c:g}) - G(xi={xi:g}, c={c:g})|",
        region=[lower, upper],
    )
    return [check], rows


def zoomed_chart(chart: FiberChart, center: np.ndarray, scale: float) -> FiberChart:
    """The chart y' -> chart(center + scale y'), so features of size ``scale`` have unit size."""
    center = np.asarray(center, dtype=float)

    return FiberChart(
        name=f"{chart.name}@{scale:.3g}",
        box=chart.box,
        embed=lambda y: chart.embed(center + scale * np.asarray(y, dtype=float)),
        jacobian=lambda y: scale * chart.jacobian(center + scale * np.asarray(y, dtype=float)),
    )


PLANES = ((0, 1), (0, 2), (1, 2))


def surface_curvature_panel(
    complex_: AllRightComplex,
    params: SmoothingParams,
    samples: int,
    rng: np.random.Generator,
    eps: float,
) -> Tuple[List[CheckResult], List[dict]]:
    """
    Sectional curvatures of G(P^2, r) across the forcing bands and the link transitions.

    Points sit at polar angle zeta from a pole of the model; zeta is log-uniform so that the
    link radius asinh(sin(zeta) sinh t) sweeps through the one-dimensional transition. Each
    point gets a chart zoomed to the size of zeta, and curvatures are taken in the
    coordinate planes of (y_1, y_2, t).
    """
    data = SurfaceSmoothing.build(complex_, params)
    model = data.model()
    if model is None:
        raise UnsupportedDimensionError(2, "curvature sampling needs the canonical suspension map")
    start = time.time()
    chart = next(c for c in model.atlas.charts if c.name == "+x0")
    d2 = band_width(params, 2)
    lo_t, hi_t = max(data.lam - data.d - 1.0, 2.0), data.top + 3.0
    zetas = np.exp(rng.uniform(-(d2 + 10.0), math.log(0.7), size=samples))
    radii = rng.uniform(lo_t, hi_t, size=samples)

    rows: List[dict] = []
    worst = 0.0
    for zeta, t in zip(zetas, radii):
        scale = min(float(zeta), 0.25)
        zoom = zoomed_chart(chart, np.array([math.tan(zeta), 0.0]), scale)
        field = model.chart_field(zoom, (lo_t - 1.0, hi_t + 1.0))
        point = np.array([[0.0, 0.0, t]])
        eye = np.eye(3)
        for i, j in PLANES:
            K = float(sectional_curvatures(field, point, eye[i], eye[j])[0])
            worst = max(worst, abs(K + 1.0))
            rows.append({"zeta": float(zeta), "t": float(t), "plane": f"{i}{j}", "K": K})

    logger.info(
        "surface curvature sweep finished",
        complex=complex_.name,
        samples=samples,
        worst=worst,
        elapsed=round(time.time() - start, 3),
    )
    check = CheckResult.below(
        "surface_pinching",
        worst,
        eps,
        "max |K + 1| over sampled planes",
        band=[lo_t, hi_t],
        d=list(params.d),
        r=params.r,
    )
    return [check], rows
