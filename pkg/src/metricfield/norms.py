"""C^k seminorms on model charts and epsilon-hyperbolicity certification."""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from src.config import settings
from src.metricfield.chart import ModelChart
from src.metricfield.field import FieldKind, MetricField, hyperbolic_model
from src.metricfield.finite_differences import budgeted_partial, crop, multi_indices
from src.utils.errors import ParameterError, ResolutionError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_ORDER = 2


@dataclass(frozen=True)
class NormWitness:
    """Where a seminorm attains its sampled maximum."""

    value: float
    budget: float
    point: Tuple[float, ...]
    multi_index: Tuple[int, ...]
    component: Tuple[int, int]


@dataclass(frozen=True)
class HyperbolicityWitness:
    """Outcome of an epsilon-hyperbolicity test."""

    passed: bool
    norm: float
    budget: float
    eps: float
    witness: NormWitness

    def __bool__(self) -> bool:
        return self.passed


def _shared_chart(f: MetricField, g: MetricField) -> ModelChart:
    chart = f.chart or g.chart
    if chart is None:
        raise ParameterError("chart", None, "at least one field lives on a model chart")
    for other in (f.chart, g.chart):
        if other is not None and other != chart:
            raise ParameterError("chart", (f.chart, g.chart), "both fields on the same chart")
    return chart


def _check_order(chart: ModelChart, k: int) -> None:
    if k < 0 or k > MAX_ORDER:
        raise ResolutionError(f"order {k} not supported (0 <= k <= {MAX_ORDER})", order=k)
    layers = min(len(ax) for ax in chart.axes()) - 1
    if k > 0 and layers < 4:
        raise ResolutionError("fewer than 4 grid layers on an axis", layers=layers, order=k)


def gridded_ck(
    chart: ModelChart,
    coarse: np.ndarray,
    fine: np.ndarray,
    k: int,
    richardson: Optional[bool] = None,
) -> NormWitness:
    """
    Sampled C^k seminorm of gridded values over the chart interior.

    Args:
        chart: Chart the values were sampled on
        coarse: Values on ``chart.grid()``, shape (*grid, ...)
        fine: Values on ``chart.grid(refine=True)``
        k: Highest derivative order

    Returns:
        NormWitness with the maximum |d^J v| and its finite-difference budget
    """
    _check_order(chart, k)
    richardson = settings.richardson if richardson is None else richardson
    dim = chart.dim
    coords = chart.grid()

    if k == 0:
        mask = chart.interior_mask(coords, 0)
        values = np.abs(coarse).reshape(coarse.shape[:dim] + (-1,))
        masked = np.where(mask[..., None], values, -np.inf)
        flat = int(np.argmax(masked))
        where = np.unravel_index(flat, masked.shape)
        width = coarse.shape[-1] if coarse.ndim > dim else 1
        return NormWitness(
            value=float(masked.reshape(-1)[flat]),
            budget=0.0,
            point=tuple(float(c) for c in coords[where[:dim]]),
            multi_index=(0,) * dim,
            component=(int(where[dim]) // width, int(where[dim]) % width),
        )

    inner = crop(coords, dim)
    mask = chart.interior_mask(inner, k)
    if not mask.any():
        raise ResolutionError("no grid node is far enough from the chart boundary", order=k)

    best: Optional[NormWitness] = None
    budget = 0.0
    for counts in multi_indices(dim, k):
        estimate, error = budgeted_partial(coarse, fine, counts, chart.steps, richardson)
        magnitude = np.abs(estimate).reshape(estimate.shape[:dim] + (-1,))
        magnitude = np.where(mask[..., None], magnitude, -np.inf)
        flat = int(np.argmax(magnitude))
        if best is None or magnitude.reshape(-1)[flat] > best.value:
            where = np.unravel_index(flat, magnitude.shape)
            width = estimate.shape[-1] if estimate.ndim > dim else 1
            best = NormWitness(
                value=float(magnitude.reshape(-1)[flat]),
                budget=0.0,
                point=tuple(float(c) for c in inner[where[:dim]]),
                multi_index=tuple(counts),
                component=(int(where[dim]) // width, int(where[dim]) % width),
            )
        error = error.reshape(error.shape[:dim] + (-1,))
        budget = max(budget, float(np.max(np.where(mask[..., None], error, 0.0))))
    return NormWitness(best.value, budget, best.point, best.multi_index, best.component)


def ck_seminorm_witness(
    f: MetricField,
    g: MetricField,
    k: int = 2,
    richardson: Optional[bool] = None,
) -> NormWitness:
    """
    |f - g|_{C^k} over the chart, with its finite-difference budget and location.

    Raises:
        ResolutionError: If the grid is too coarse for order k
    """
    chart = _shared_chart(f, g)
    _check_order(chart, k)
    coarse_pts = chart.grid()
    fine_pts = chart.grid(refine=True)
    coarse = f(coarse_pts) - g(coarse_pts)
    fine = f(fine_pts) - g(fine_pts)
    return gridded_ck(chart, coarse, fine, k, richardson)


def ck_seminorm(f: MetricField, g: MetricField, k: int = 2) -> float:
    """Max over interior grid nodes of all partials of order <= k of f - g."""
    return ck_seminorm_witness(f, g, k).value


def is_eps_hyperbolic(f: MetricField, eps: float, k: int = 2) -> HyperbolicityWitness:
    """
    Test |f - sigma|_{C^k} < eps on the field's chart.

    The finite-difference budget is added to the measured norm before comparing.
    """
    if f.chart is None:
        raise ParameterError("chart", None, "field on a model chart")
    witness = ck_seminorm_witness(f, hyperbolic_model(f.chart), k)
    passed = witness.value + witness.budget < eps
    logger.debug("hyperbolicity test", label=f.label, norm=witness.value, budget=witness.budget, eps=eps)
    return HyperbolicityWitness(passed=passed, norm=witness.value, budget=witness.budget, eps=eps, witness=witness)


def scalar_ck_norm(chart: ModelChart, fn: Callable[[np.ndarray], np.ndarray], k: int = 2) -> float:
    """|fn|_{C^k} for a scalar function of chart coordinates."""
    coarse = np.asarray(fn(chart.grid()), dtype=float)
    fine = np.asarray(fn(chart.grid(refine=True)), dtype=float)
    witness = gridded_ck(chart, coarse, fine, k)
    return witness.value + witness.budget


def blend(
    f1: MetricField,
    f2: MetricField,
    weight: Callable[[np.ndarray], np.ndarray],
    label: str = "blend",
) -> MetricField:
    """The combination lambda f1 + (1 - lambda) f2 with a scalar weight lambda(x, t)."""
    chart = _shared_chart(f1, f2)

    def evaluator(points: np.ndarray) -> np.ndarray:
        lam = np.asarray(weight(points), dtype=float)[..., None, None]
        return lam * f1(points) + (1.0 - lam) * f2(points)

    kind = FieldKind.WARPED_VARIABLE if f1.kind == f2.kind == FieldKind.WARPED_VARIABLE else FieldKind.GENERAL
    return MetricField.on_chart(chart, evaluator, kind=kind, label=label)


def blend_bound(lam_norm: float, eps1: float, eps2: float) -> float:
    """
    Deviation allowed for a blend of an eps1- and an eps2-hyperbolic field.

    |lambda|_{C^2} is floored at 1 so the bound also covers the 1 - lambda term.
    """
    return 4.0 * max(lam_norm, 1.0) * (eps1 + eps2)


def radial_reach(f: MetricField, eps: Optional[float] = None, nodes: int = 129) -> Tuple[float, float]:
    """
    Longest sampled distance from the chart center and the bound (2 + xi) + n^2 eps.

    Each grid point (x, t) is reached by the path (0, 0) -> (x, 0) -> (x, t); its
    metric length bounds the distance from the center.

    Returns:
        (max path length, bound)
    """
    chart = f.chart
    if chart is None:
        raise ParameterError("chart", None, "field on a model chart")
    if eps is None:
        eps = ck_seminorm(f, hyperbolic_model(chart), 2)
    n = chart.n
    targets = chart.grid().reshape(-1, chart.dim)
    targets = targets[chart.in_domain(targets)]
    s = np.linspace(0.0, 1.0, nodes)

    x = targets[:, :n]
    flat_pts = np.concatenate([s[None, :, None] * x[:, None, :], np.zeros((len(x), nodes, 1))], axis=-1)
    g_flat = f(flat_pts)[..., :n, :n]
    speed_flat = np.sqrt(np.maximum(np.einsum("pi,psij,pj->ps", x, g_flat, x), 0.0))

    t = targets[:, -1]
    rise_pts = np.concatenate(
        [np.broadcast_to(x[:, None, :], (len(x), nodes, n)), (s[None, :] * t[:, None])[..., None]],
        axis=-1,
    )
    speed_rise = np.sqrt(np.maximum(f(rise_pts)[..., n, n], 0.0)) * np.abs(t)[:, None]

    lengths = trapezoid(speed_flat, s, axis=-1) + trapezoid(speed_rise, s, axis=-1)
    return float(np.max(lengths)), (2.0 + chart.xi) + n ** 2 * eps
