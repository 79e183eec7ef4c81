"""
Complete metrics on M x R over a closed manifold (M, h).

With g the cut of the outer metric at r - 1/2:

    t >= r - 1/2          W_{r-1/2}(outer)
    r - d <= t < r - 1/2  sinh^2(t) (h + rho_{r-d, d-1/2}(t) (g - h)) + dt^2
    t < r - d             mu(t)^2 h + dt^2,  mu(t) = (e^t - lambda(t) e^-t) / 2

where lambda = rho_{r-2d, d}. Below r - 2d the metric is (e^t / 2)^2 h + dt^2, whose
radial curvature is exactly -1.
"""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from src.metricfield import CoordinateBox, FiberAtlas, FiberChart, FieldKind, MetricField
from src.metricfield.families import FormLike, as_form
from src.models import SmoothingParams
from src.smoothing.smoothed import band_width
from src.utils.errors import ParameterError
from src.warping import AffineBump, RadialMetric, warp_forcing
from src.widths import RadiusSchedule


@dataclass(frozen=True)
class ManifoldConeMetric:
    """A warped metric on M x R, evaluated through its full fiber cut."""

    atlas: FiberAtlas
    fiber: Callable[[np.ndarray], np.ndarray]
    outer: RadialMetric
    r: float
    d: float
    label: str = ""

    @property
    def exponential_zone(self) -> float:
        """Below this radius the metric is (e^t / 2)^2 h + dt^2."""
        return self.r - 2.0 * self.d

    def warp(self, t: np.ndarray) -> np.ndarray:
        """mu(t) = (e^t - lambda(t) e^-t) / 2."""
        t = np.asarray(t, dtype=float)
        lam = AffineBump.scaled(self.r - 2.0 * self.d, self.d)(t)
        return 0.5 * (np.exp(t) - lam * np.exp(-t))

    def full_cut(self, X: np.ndarray, t: np.ndarray) -> np.ndarray:
        """The fiber block of the metric at (X, t); t may be negative."""
        X = np.asarray(X, dtype=float)
        t = np.asarray(t, dtype=float)
        shape = np.broadcast_shapes(X.shape[:-1], t.shape)
        X = np.broadcast_to(X, shape + X.shape[-1:])
        t = np.broadcast_to(t, shape)
        top = self.r - 0.5
        h = self.fiber(X)
        forced = warp_forcing(self.outer, top)
        frozen = self.outer.unwarped(X, np.full_like(t, top))
        outer = forced.unwarped(X, np.maximum(t, top))
        w = AffineBump.scaled(self.r - self.d, self.d - 0.5)(t)[..., None, None]
        band = np.where(w == 0.0, h, np.where(w == 1.0, frozen, h + w * (frozen - h)))
        with np.errstate(over="ignore"):
            sinh_sq = (np.sinh(t) ** 2)[..., None, None]
            mu_sq = (self.warp(t) ** 2)[..., None, None]
        tt = t[..., None, None]
        return np.where(
            tt >= top,
            sinh_sq * outer,
            np.where(tt >= self.r - self.d, sinh_sq * band, mu_sq * h),
        )

    def chart_field(self, chart: FiberChart, t_range: Tuple[float, float]) -> MetricField:
        """Components in (y, t) over chart box x t_range."""
        n = chart.dim
        lo, hi = t_range

        def evaluator(points: np.ndarray) -> np.ndarray:
            y = points[..., :n]
            out = np.zeros(points.shape[:-1] + (n + 1, n + 1))
            out[..., :n, :n] = chart.pullback(y, self.full_cut(chart.embed(y), points[..., n]))
            out[..., n, n] = 1.0
            return out

        domain = CoordinateBox(lower=chart.box.lower + (lo,), upper=chart.box.upper + (hi,))
        return MetricField(domain=domain, evaluator=evaluator, kind=FieldKind.WARPED_VARIABLE, label=self.label)


def manifold_cone_metric(
    atlas: FiberAtlas,
    h: FormLike,
    r: float,
    d: float,
    outer: Optional[RadialMetric] = None,
) -> ManifoldConeMetric:
    """
    The complete metric over (M, h), hyperbolically capped below r - 2d.

    Args:
        atlas: Atlas of the fiber M
        h: Fiber metric (canonical metric of the atlas when None)
        r: Radius playing the role of r_{m-2}; the outer metric is read at r - 1/2
        d: Width playing the role of d_{m+1}
        outer: Metric used outside B_{r - 1/2} (sinh^2(t) h + dt^2 by default)

    Raises:
        ParameterError: Unless d > 1/2 and r - 2d > 0
    """
    if not d > 0.5:
        raise ParameterError("d", d, "d > 1/2")
    if not r - 2.0 * d > 0.0:
        raise ParameterError("r", r, f"r - 2d > 0 with d = {d:g}")
    fiber = as_form(atlas, h)
    outer = outer or RadialMetric.constant_cut(atlas, fiber, label="sinh^2 h")
    return ManifoldConeMetric(
        atlas=atlas,
        fiber=fiber,
        outer=outer,
        r=float(r),
        d=float(d),
        label=f"M({atlas.name},r={r:g},d={d:g})",
    )


def manifold_cone_from_params(atlas: FiberAtlas, h: FormLike, params: SmoothingParams, m: int) -> ManifoldConeMetric:
    """The manifold cone with r = r_{m-2} of the schedule and d = d_{m+1}."""
    schedule = RadiusSchedule(params.r, m, params.varsigma, params.c, params.xi)
    return manifold_cone_metric(atlas, h, schedule.r_k(m - 2), band_width(params, m + 1))
