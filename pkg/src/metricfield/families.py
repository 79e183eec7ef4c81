"""One-parameter families of fiber metrics: c-boundedness and epsilon-slowness."""
from dataclasses import dataclass
from math import exp, factorial, sqrt
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from src.config import settings
from src.metricfield.atlas import FiberAtlas, FiberChart
from src.metricfield.field import MetricField
from src.metricfield.finite_differences import grid_partial, multi_indices, stencil_partials
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# (ambient points (..., N), t (...)) -> ambient symmetric forms (..., N, N)
AmbientForm = Callable[[np.ndarray, np.ndarray], np.ndarray]
FormLike = Union[None, float, np.ndarray, Callable[[np.ndarray], np.ndarray]]


def as_form(atlas: FiberAtlas, form: FormLike) -> Callable[[np.ndarray], np.ndarray]:
    """Normalize a constant description of a fiber metric to X -> Q(X)."""
    if form is None:
        return atlas.round_form
    if callable(form):
        return form
    matrix = np.asarray(form, dtype=float)
    if matrix.ndim == 0:
        return lambda X: float(matrix) * atlas.round_form(X)

    def projected(X: np.ndarray) -> np.ndarray:
        proj = atlas.tangent_projector(X)
        return proj @ matrix @ proj

    return projected


@dataclass(frozen=True)
class MetricFamily:
    """A family {g_t}, t in ``interval``, of metrics on a fiber with a fixed atlas."""

    atlas: FiberAtlas
    interval: Tuple[float, float]
    ambient: AmbientForm
    label: str = ""

    def __post_init__(self):
        if not self.interval[0] < self.interval[1]:
            raise ParameterError("interval", self.interval, "lower < upper")

    def member(self, X: np.ndarray, t: np.ndarray) -> np.ndarray:
        return self.ambient(np.asarray(X, dtype=float), np.asarray(t, dtype=float))

    def chart_metric(self, chart: FiberChart, y: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Components of g_t in ``chart`` at coordinates y."""
        y = np.asarray(y, dtype=float)
        t = np.broadcast_to(np.asarray(t, dtype=float), y.shape[:-1])
        return chart.pullback(y, self.member(chart.embed(y), t))

    def chart_field(self, chart: FiberChart) -> Callable[[np.ndarray], np.ndarray]:
        """(y, t) -> components of g_t(y), as a single-argument product-space evaluator."""
        n = chart.dim
        return lambda p: self.chart_metric(chart, p[..., :n], p[..., n])

    @classmethod
    def constant(
        cls,
        atlas: FiberAtlas,
        form: FormLike = None,
        interval: Tuple[float, float] = (0.0, 1.0),
        label: str = "constant",
    ) -> "MetricFamily":
        base = as_form(atlas, form)
        return cls(atlas=atlas, interval=interval, ambient=lambda X, t: base(X), label=label)

    @classmethod
    def interpolation(
        cls,
        atlas: FiberAtlas,
        target: FormLike,
        weight: Callable[[np.ndarray], np.ndarray] = lambda s: s,
        interval: Tuple[float, float] = (0.0, 1.0),
        label: str = "interpolation",
    ) -> "MetricFamily":
        """sigma_0 + w(t) (g_* - sigma_0) between the canonical metric and a target."""
        goal = as_form(atlas, target)

        def ambient(X: np.ndarray, t: np.ndarray) -> np.ndarray:
            sigma = atlas.round_form(X)
            w = np.asarray(weight(t), dtype=float)[..., None, None]
            return sigma + w * (goal(X) - sigma)

        return cls(atlas=atlas, interval=interval, ambient=ambient, label=label)

    def reparametrize(
        self,
        phi: Callable[[np.ndarray], np.ndarray],
        interval: Tuple[float, float],
        label: str = "",
    ) -> "MetricFamily":
        """The family s -> g_{phi(s)} on ``interval``."""
        return MetricFamily(
            atlas=self.atlas,
            interval=interval,
            ambient=lambda X, s: self.ambient(X, phi(s)),
            label=label or f"{self.label}-reparametrized",
        )

    def scaled(self, k: float) -> "MetricFamily":
        return MetricFamily(
            atlas=self.atlas,
            interval=self.interval,
            ambient=lambda X, t: k * self.ambient(X, t),
            label=f"{k:g}*{self.label}",
        )


def _chart_nodes(chart: FiberChart, per_axis: int) -> Tuple[np.ndarray, Tuple[float, ...]]:
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(chart.box.lower, chart.box.upper)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return grid, tuple(float(ax[1] - ax[0]) for ax in axes)


def bound_constants(
    fam: MetricFamily,
    t_samples: int = 9,
    per_axis: int = 17,
) -> Tuple[float, float]:
    """
    Measured (C^2 norm, minimal determinant) over every chart and sampled t.

    Derivatives are taken in the fiber directions; the max over charts is used.
    """
    ts = np.linspace(fam.interval[0], fam.interval[1], t_samples)
    norm = 0.0
    min_det = np.inf
    for chart in fam.atlas.charts:
        grid, steps = _chart_nodes(chart, per_axis)
        n = chart.dim
        y = np.broadcast_to(grid[..., None, :], grid.shape[:-1] + (len(ts), n))
        values = fam.chart_metric(chart, y, np.broadcast_to(ts, grid.shape[:-1] + (len(ts),)))
        norm = max(norm, float(np.max(np.abs(values))))
        min_det = min(min_det, float(np.min(np.linalg.det(values))))
        for counts in multi_indices(n, 2):
            if sum(counts) == 0:
                continue
            norm = max(norm, float(np.max(np.abs(grid_partial(values, counts, steps)))))
    return norm, min_det


def is_c_bounded(fam: MetricFamily, c: float, t_samples: int = 9, per_axis: int = 17) -> bool:
    """|g_t|_{C^2} < c and det g_t > 1/c at all samples."""
    if c <= 1.0:
        raise ParameterError("c", c, "c > 1")
    norm, min_det = bound_constants(fam, t_samples, per_axis)
    logger.debug("boundedness measured", label=fam.label, norm=norm, min_det=min_det, c=c)
    return norm < c and min_det > 1.0 / c


@dataclass(frozen=True)
class SlownessReport:
    """Supremum ratios of the two slowness inequalities."""

    first_second: float
    mixed: float

    @property
    def value(self) -> float:
        return max(self.first_second, self.mixed)


def _whitened_extremes(g: np.ndarray, d: np.ndarray) -> np.ndarray:
    """max |u^T d u| / (u^T g u) over u, batched."""
    lower = np.linalg.cholesky(g)
    half = np.linalg.solve(lower, d)
    sym = np.linalg.solve(lower, np.swapaxes(half, -1, -2))
    sym = 0.5 * (sym + np.swapaxes(sym, -1, -2))
    return np.max(np.abs(np.linalg.eigvalsh(sym)), axis=-1)


def _test_vectors(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    frame = np.eye(n)
    extra = rng.normal(size=(count, n))
    extra /= np.linalg.norm(extra, axis=-1, keepdims=True)
    return np.concatenate([frame, extra])


def measure_slowness(
    fam: MetricFamily,
    t_samples: int = 17,
    per_axis: int = 5,
    random_vectors: int = 4,
    h: float = 1e-3,
    seed: Optional[int] = None,
) -> SlownessReport:
    """
    Sampled suprema of the epsilon-slow ratios.

    (i)  |d^k/dt^k g_t(u, u)| / g_t(u, u) for k = 1, 2, maximized over u exactly through
         the generalized eigenproblem;
    (ii) |d/dt v g_t(u, u)| / (g(u,u) g(v,v)^1/2 + g(u,u)^1/2 g(nabla_v u, nabla_v u)^1/2)
         for coordinate-constant fields u built from the chart frame and random
         combinations.

    Args:
        fam: Family to measure
        t_samples: Number of interior t samples
        per_axis: Fiber sample nodes per chart axis
        random_vectors: Random unit combinations added to the frame
        h: Finite-difference step in t and y
        seed: Seed for the random combinations
    """
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    lo, hi = fam.interval
    ts = np.linspace(lo + 2 * h, hi - 2 * h, t_samples)
    worst_i = 0.0
    worst_ii = 0.0
    for chart in fam.atlas.charts:
        n = chart.dim
        grid, _ = _chart_nodes(chart, per_axis)
        margin = 2 * h
        inner = grid.reshape(-1, n)
        inner = inner[chart.box.margin(inner) >= margin]
        pts = np.concatenate([
            np.repeat(inner, len(ts), axis=0),
            np.tile(ts, len(inner))[:, None],
        ], axis=1)
        g, first, second = stencil_partials(fam.chart_field(chart), pts, h)

        for d in (first[:, n], second[:, n, n]):
            worst_i = max(worst_i, float(np.max(_whitened_extremes(g, d))))

        g_inv = np.linalg.inv(g)
        dg = first[:, :n]  # [p, l, i, j] = d_l g_ij
        # Gamma^k_{li} = 1/2 g^{km} (d_l g_mi + d_i g_ml - d_m g_li)
        lowered = 0.5 * (
            np.einsum("plmi->pmli", dg)
            + np.einsum("piml->pmli", dg)
            - dg
        )
        gamma = np.einsum("pkm,pmli->pkli", g_inv, lowered)
        dt_dg = second[:, n, :n]  # [p, l, i, j] = d_t d_l g_ij

        vectors = _test_vectors(n, random_vectors, rng)
        for a in vectors:
            for v in vectors:
                num = np.abs(np.einsum("l,plij,i,j->p", v, dt_dg, a, a))
                guu = np.einsum("i,pij,j->p", a, g, a)
                gvv = np.einsum("i,pij,j->p", v, g, v)
                cov = np.einsum("pkli,l,i->pk", gamma, v, a)
                gcc = np.einsum("pi,pij,pj->p", cov, g, cov)
                den = guu * np.sqrt(gvv) + np.sqrt(guu) * np.sqrt(np.maximum(gcc, 0.0))
                worst_ii = max(worst_ii, float(np.max(num / den)))
    report = SlownessReport(first_second=worst_i, mixed=worst_ii)
    logger.debug("slowness measured", label=fam.label, first_second=worst_i, mixed=worst_ii)
    return report


def is_eps_slow(fam: MetricFamily, eps: float, atol: float = 1e-9, **kwargs) -> bool:
    """Both slowness ratios stay below eps, up to the finite-difference tolerance."""
    return measure_slowness(fam, **kwargs).value < eps + atol


def family_from_variable_field(f: MetricField) -> MetricFamily:
    """
    The fiber family {g_t} of a variable field e^{2t} g_t + dt^2 on a model chart.

    The family lives on the cube inscribed in B^n, over I_xi.
    """
    if f.chart is None:
        raise ParameterError("chart", None, "field on a model chart")
    n = f.chart.n
    atlas = FiberAtlas.ball(n)

    def ambient(X: np.ndarray, t: np.ndarray) -> np.ndarray:
        X, t = np.broadcast_arrays(X, t[..., None])
        points = np.concatenate([X, t[..., :1]], axis=-1)
        return np.exp(-2.0 * t[..., :1, None]) * f(points)[..., :n, :n]

    h = f.chart.half_height
    return MetricFamily(atlas=atlas, interval=(-h, h), ambient=ambient, label=f"{f.label}-fibers")


def slowness_factor(n: int, xi: float) -> float:
    """a'(n, xi) such that an eps-hyperbolic variable field has an (a' eps)-slow family."""
    c4 = sqrt(n * factorial(n) * 2 ** (n + 1))
    return 9.0 * exp(2.0 * (1.0 + xi)) * (n + 2.0 * c4) * n ** 2 * (factorial(n) * 2 ** (n + 1)) ** 3


BOUND_MARGIN = 1e-9


def bounding_constant(norm: float, min_det: float, floor: float = 1.0) -> float:
    """max(norm, 1/min_det, floor) raised by a relative margin, so both strict bounds hold."""
    return max(norm, 1.0 / min_det, floor) * (1.0 + BOUND_MARGIN)


def sphere_bound_constant(n: int, per_axis: int = 17) -> float:
    """A constant c with the round S^n c-bounded in the gnomonic atlas."""
    fam = MetricFamily.constant(FiberAtlas.sphere(n))
    norm, min_det = bound_constants(fam, t_samples=2, per_axis=per_axis)
    return bounding_constant(norm, min_det)


def sample_family_rows(fam: MetricFamily, ts: List[float], per_axis: int = 5) -> List[dict]:
    """Rows (chart, y, t, g_ij) for dumps."""
    rows = []
    for chart in fam.atlas.charts:
        grid, _ = _chart_nodes(chart, per_axis)
        for y in grid.reshape(-1, chart.dim):
            for t in ts:
                g = fam.chart_metric(chart, y, t)
                row = {"chart": chart.name, "t": float(t)}
                row.update({f"y{i}": float(y[i]) for i in range(chart.dim)})
                row.update({f"g{i}{j}": float(g[i, j]) for i in range(chart.dim) for j in range(chart.dim)})
                rows.append(row)
    return rows
