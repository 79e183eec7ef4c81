"""Numeric panels for the chart estimates behind forcing and extension."""
from typing import List, Optional, Sequence

import numpy as np

from src.hyptrig import asinh_exp, log_sinh
from src.metricfield import FiberAtlas, MetricFamily, ModelChart, chart_pullback, measure_slowness
from src.metricfield.families import bound_constants, bounding_constant, sphere_bound_constant
from src.metricfield.norms import gridded_ck
from src.models.report import CheckResult
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger
from src.warping.constants import excess_after_extension, excess_loss, extension_bound, slow_family_bound
from src.warping.extension import hyperbolic_extension
from src.warping.radial import RadialLike, as_radial
from src.warping.reindex import reindex_inverse

logger = setup_logger(__name__)


def extension_chart_radius(x: np.ndarray, t: np.ndarray, r0: float, beta0: float) -> np.ndarray:
    """
    rbar(x, t) = asinh(sinh(t0 + t) sin(beta0 + x / sinh t0)), t0 = asinh(sinh r0 / sin beta0).

    The distance to the base of an extension, read in a chart centered at the point at
    distance r0 from the base and angle beta0.
    """
    t0 = float(reindex_inverse(beta0, r0))
    angle = beta0 + x / np.sinh(t0)
    return asinh_exp(log_sinh(t0 + t) + np.log(np.sin(angle)))


def radius_chart_panel(
    r0_values: Sequence[float] = (10.0, 15.0),
    xi: float = 1.0,
    beta0_values: Sequence[float] = (np.pi / 6, np.pi / 4, np.pi / 3),
    nodes: int = 64,
) -> List[CheckResult]:
    """
    |rbar - (t + r0)|_{C^2} <= 4 e^{2(1+xi)} / cosh(r0 - (2 + xi)) on a nodes x nodes chart.

    Raises:
        ParameterError: If some r0 < 5 + 2 xi
    """
    chart = ModelChart(n=1, xi=xi, grid_step=2.0 / (nodes - 1))
    checks: List[CheckResult] = []
    for r0 in r0_values:
        if r0 < 5.0 + 2.0 * xi:
            raise ParameterError("r0", r0, f"r0 >= 5 + 2 xi = {5.0 + 2.0 * xi:g}")
        bound = excess_loss(r0, xi)
        for beta0 in beta0_values:
            samples = []
            for refine in (False, True):
                grid = chart.grid(refine)
                x, t = grid[..., 0], grid[..., 1]
                samples.append(extension_chart_radius(x, t, r0, beta0) - (t + r0))
            witness = gridded_ck(chart, samples[0], samples[1], 2)
            checks.append(CheckResult.below(
                "extension_radius_c2",
                witness.value + witness.budget,
                bound,
                "4 e^{2(1+xi)} / cosh(r0 - (2+xi))",
                r0=r0,
                beta0=float(beta0),
                xi=xi,
            ))
    return checks


def slow_family_panel(
    fam: MetricFamily,
    xi: float,
    centers: Sequence[float],
    c: Optional[float] = None,
    grid_step: float = 0.25,
) -> List[CheckResult]:
    """
    Charts of excess xi for e^{2t} g_t + dt^2 against C(c, n, xi)(e^{-T} + eps).

    eps is the measured slowness of the family and T = 1 + xi + inf I. Each center t0
    must lie in I(xi); the fiber chart center is the first chart's center.
    """
    lo, hi = fam.interval
    T = 1.0 + xi + lo
    if any(not (T <= t0 <= hi - (1.0 + xi)) for t0 in centers):
        raise ParameterError("centers", list(centers), f"[{T:g}, {hi - (1.0 + xi):g}]")
    if c is None:
        norm, min_det = bound_constants(fam)
        c = bounding_constant(norm, min_det)
    eps = measure_slowness(fam).value
    n = fam.atlas.dim
    model = ModelChart(n=n, xi=xi, grid_step=grid_step)
    fiber = fam.atlas.charts[0]
    bound = slow_family_bound(c, n, xi, T, eps)

    def cut(y: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.exp(2.0 * np.asarray(t))[..., None, None] * fam.chart_metric(fiber, y, t)

    checks = []
    for t0 in centers:
        witness = chart_pullback(cut, fiber.center(), t0, model).deviation()
        checks.append(CheckResult.below(
            "slow_family_chart",
            witness.value + witness.budget,
            bound,
            "C(c,n,xi) (e^{-T} + eps)",
            t0=float(t0),
            eps=eps,
            c=c,
        ))
    return checks


def radial_deviation(h: RadialLike, xi: float, radii: Sequence[float], grid_step: float = 0.125) -> float:
    """Largest chart deviation of a radial metric over chart centers at the given radii."""
    radial = as_radial(h)
    model = ModelChart(n=radial.atlas.dim, xi=xi, grid_step=grid_step)
    worst = 0.0
    for chart in radial.atlas.charts:
        for t0 in radii:
            witness = radial.pullback(chart, chart.center(), t0, model).deviation()
            worst = max(worst, witness.value + witness.budget)
    return worst


def extension_chart_panel(
    h: RadialLike,
    xi: float = 1.5,
    r: float = 12.0,
    k: int = 1,
    offsets: Sequence[float] = (0.0, 0.5, 1.0),
    grid_step: float = 0.25,
) -> List[CheckResult]:
    """
    Charts of E_k(h) on H^k x (S - B_r) against C_3(k, xi)(eps + e^{-r}).

    eps is the measured deviation of h at radii beyond r. Chart centers are taken in the
    gnomonic chart centered on the base, at angles whose base radius clears r by a
    full chart height.

    Raises:
        ParameterError: If xi <= 1 or r <= 7 + 3 xi
    """
    if not xi > 1.0:
        raise ParameterError("xi", xi, "xi > 1")
    radial = as_radial(h)
    n = radial.atlas.dim
    height = 1.0 + xi
    eps = radial_deviation(radial, xi, [r + height + 1.0, r + height + 3.0])
    extended = hyperbolic_extension(radial, k)
    atlas = FiberAtlas.sphere(n + k)
    fiber = next(c for c in atlas.charts if c.name == f"+x{k}")
    model = ModelChart(n=n + k, xi=xi, grid_step=grid_step)
    c_sphere = sphere_bound_constant(k, per_axis=9)
    bound = extension_bound(c_sphere, k, xi, eps, r)

    checks = [CheckResult.flag(
        "extension_excess",
        excess_after_extension(r, xi) > 0.0,
        "xi - e^{-(r - (7+3xi))} > 0",
        excess=excess_after_extension(r, xi),
    )]
    for offset in offsets:
        y0 = np.zeros(n + k)
        y0[0] = offset
        sin_beta = float(np.linalg.norm(fiber.embed(y0)[k:]))
        t0 = float(reindex_inverse(np.arcsin(min(sin_beta, 1.0)), r + height + 1.0))
        witness = extended.pullback(fiber, y0, t0, model).deviation()
        checks.append(CheckResult.below(
            "extension_chart",
            witness.value + witness.budget,
            bound,
            "C_3(k,xi) (eps + e^{-r})",
            offset=offset,
            t0=t0,
            eps=eps,
        ))
    logger.info("extension panel evaluated", k=k, r=r, xi=xi, eps=eps)
    return checks
