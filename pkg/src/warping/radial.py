"""Radial metrics sinh^2(t) g_t + dt^2 on cones over a fiber, and their cuts."""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from src.metricfield import (
    CoordinateBox,
    FiberAtlas,
    FiberChart,
    FieldKind,
    MetricFamily,
    MetricField,
    ModelChart,
    PullbackChart,
    chart_pullback,
)
from src.metricfield.families import AmbientForm
from src.utils.errors import DomainError, ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _sinh_ratio_sq(w: Callable[[np.ndarray], np.ndarray], t: np.ndarray) -> np.ndarray:
    return (np.asarray(w(t), dtype=float) / np.sinh(t)) ** 2


@dataclass(frozen=True)
class RadialMetric:
    """
    A variable metric sinh^2(t) g_t + dt^2 on (fiber) x (t_min, t_max).

    ``unwarped`` returns the ambient form of the unwarped cut g_t at fiber points X.
    A metric with t_min > 0 is only partially defined, as outside a ball.
    """

    atlas: FiberAtlas
    unwarped: AmbientForm
    t_min: float = 0.0
    t_max: float = np.inf
    label: str = ""

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ParameterError("t_min", (self.t_min, self.t_max), "t_min < t_max")

    def check_radius(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t_min) or np.any(t > self.t_max):
            raise DomainError("t", t.tolist(), f"[{self.t_min:g}, {self.t_max:g}]")
        return t

    def unwarped_cut(self, X: np.ndarray, t: np.ndarray) -> np.ndarray:
        """The unwarped cut g_t at fiber points X."""
        t = self.check_radius(t)
        X, t = _broadcast(X, t)
        return self.unwarped(X, t)

    def spherical_cut(self, X: np.ndarray, t: np.ndarray) -> np.ndarray:
        """The cut sinh^2(t) g_t at fiber points X."""
        t = self.check_radius(t)
        X, t = _broadcast(X, t)
        return (np.sinh(t) ** 2)[..., None, None] * self.unwarped(X, t)

    def cut_family(self, interval: Optional[Tuple[float, float]] = None) -> MetricFamily:
        """The unwarped cuts {g_t} over ``interval`` as a metric family."""
        lo, hi = interval or (self.t_min, self.t_max)
        self.check_radius(np.array([lo, hi]))
        return MetricFamily(atlas=self.atlas, interval=(lo, hi), ambient=self.unwarped, label=f"{self.label}-cuts")

    def chart_cut(self, chart: FiberChart) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
        """(y, t) -> components of sinh^2(t) g_t in a fiber chart."""
        def cut(y: np.ndarray, t: np.ndarray) -> np.ndarray:
            y = np.asarray(y, dtype=float)
            t = np.broadcast_to(np.asarray(t, dtype=float), y.shape[:-1])
            form = self.unwarped(chart.embed(y), t)
            return (np.sinh(t) ** 2)[..., None, None] * chart.pullback(y, form)

        return cut

    def chart_field(self, chart: FiberChart, t_range: Tuple[float, float]) -> MetricField:
        """The metric in coordinates (y, t) over chart box x t_range."""
        lo, hi = t_range
        self.check_radius(np.array([lo, hi]))
        n = chart.dim
        cut = self.chart_cut(chart)

        def evaluator(points: np.ndarray) -> np.ndarray:
            out = np.zeros(points.shape[:-1] + (n + 1, n + 1))
            out[..., :n, :n] = cut(points[..., :n], points[..., n])
            out[..., n, n] = 1.0
            return out

        domain = CoordinateBox(lower=chart.box.lower + (lo,), upper=chart.box.upper + (hi,))
        return MetricField(domain=domain, evaluator=evaluator, kind=FieldKind.WARPED_VARIABLE, label=self.label)

    def pullback(self, chart: FiberChart, center: np.ndarray, t0: float, model: ModelChart) -> PullbackChart:
        """The chart of excess xi centered at (center, t0)."""
        self.check_radius(np.array([t0 - model.half_height, t0 + model.half_height]))
        return chart_pullback(self.chart_cut(chart), center, t0, model)

    @classmethod
    def polar_hyperbolic(cls, atlas: FiberAtlas, label: str = "polar") -> "RadialMetric":
        """sinh^2(t) sigma + dt^2, hyperbolic space in polar coordinates when the fiber is round."""
        return cls(atlas=atlas, unwarped=lambda X, t: atlas.round_form(X), label=label)

    @classmethod
    def constant_cut(cls, atlas: FiberAtlas, form: AmbientForm, t_min: float = 0.0, label: str = "") -> "RadialMetric":
        """sinh^2(t) g + dt^2 with a fixed fiber metric g(X)."""
        return cls(atlas=atlas, unwarped=lambda X, t: form(X), t_min=t_min, label=label)


def _broadcast(X: np.ndarray, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float)
    shape = np.broadcast_shapes(X.shape[:-1], np.shape(t))
    return np.broadcast_to(X, shape + X.shape[-1:]), np.broadcast_to(t, shape)


@dataclass(frozen=True)
class WarpDescriptor:
    """The warped variable metric w^2(t) g_t + dt^2 on ``domain``."""

    profile: Callable[[np.ndarray], np.ndarray]
    family: MetricFamily
    domain: Tuple[float, float]
    label: str = ""

    def __post_init__(self):
        lo, hi = self.domain
        if not 0.0 <= lo < hi:
            raise ParameterError("domain", self.domain, "0 <= lower < upper")
        ts = np.linspace(lo, min(hi, lo + 50.0), 257)[1:]
        if np.any(~(np.asarray(self.profile(ts)) > 0.0)):
            raise ParameterError("profile", self.label, "w > 0 on the domain")

    @property
    def sinh_warped(self) -> bool:
        return self.profile is np.sinh

    def to_radial(self) -> RadialMetric:
        """Rewrite as sinh^2(t) ((w/sinh)^2 g_t) + dt^2."""
        if self.sinh_warped:
            unwarped = self.family.ambient
        else:
            def unwarped(X: np.ndarray, t: np.ndarray) -> np.ndarray:
                return _sinh_ratio_sq(self.profile, t)[..., None, None] * self.family.ambient(X, t)

        return RadialMetric(
            atlas=self.family.atlas,
            unwarped=unwarped,
            t_min=self.domain[0],
            t_max=self.domain[1],
            label=self.label,
        )


RadialLike = Union[RadialMetric, WarpDescriptor]


def as_radial(g: RadialLike) -> RadialMetric:
    return g.to_radial() if isinstance(g, WarpDescriptor) else g


def spherical_cut(g: RadialLike, r: float) -> Callable[[np.ndarray], np.ndarray]:
    """X -> h_r(X) = w^2(r) g_r(X).

    Raises:
        DomainError: If r lies outside the metric's radial domain
    """
    radial = as_radial(g)
    radial.check_radius(r)
    return lambda X: radial.spherical_cut(X, r)


def unwarped_cut(g: RadialLike, r: float) -> Callable[[np.ndarray], np.ndarray]:
    """X -> h_r(X) / sinh^2(r)."""
    radial = as_radial(g)
    radial.check_radius(r)
    return lambda X: radial.unwarped_cut(X, r)
