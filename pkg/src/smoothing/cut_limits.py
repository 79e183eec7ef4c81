"""
Numeric cut limits of indexed families of radial metrics.

The unwarped cut of g_lambda at lambda + b is sampled on a ladder of lambda values; the
Cauchy differences along the ladder and an elementwise Aitken extrapolation estimate the
limit. Families with a known limit report their deviation from it.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import settings
from src.metricfield import FiberAtlas
from src.models import CheckResult
from src.smoothing.continuation import continuation, continued_cut_limit
from src.smoothing.dim1 import dim1_cut_limit, g_dim1_model
from src.utils.errors import DomainError
from src.utils.logger import setup_logger
from src.warping import RadialMetric, hyperbolic_extension, reindex_extension_family, shift_limit
from src.warping.radial import RadialLike, as_radial

logger = setup_logger(__name__)

Family = Callable[[float], RadialLike]
ClosedForm = Callable[[np.ndarray], np.ndarray]

AITKEN_FLOOR = 1e-300


@dataclass(frozen=True)
class CutLimitReport:
    """Outcome of one cut-limit estimate; non-convergence is reported here, never raised."""

    b: float
    window: Tuple[float, ...]
    differences: List[float]
    limit: np.ndarray
    converged: bool
    deviation: Optional[float] = None
    label: str = ""
    rows: List[dict] = field(default_factory=list)

    def checks(self, tol: Optional[float] = None) -> List[CheckResult]:
        tol = settings.cut_limit_tol if tol is None else tol
        out = [CheckResult.flag(
            f"{self.label}_cauchy",
            self.converged,
            "Cauchy differences non-increasing or below tol",
            b=self.b,
            differences=self.differences,
        )]
        if self.deviation is not None:
            out.append(CheckResult.below(f"{self.label}_closed_form", self.deviation, tol, "|limit - closed form|", b=self.b))
        return out


def aitken(a0: np.ndarray, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """Elementwise delta-squared extrapolation; falls back to the last term where it degenerates."""
    denom = a2 - 2.0 * a1 + a0
    safe = np.abs(denom) > AITKEN_FLOOR
    jump = np.where(safe, (a2 - a1) ** 2 / np.where(safe, denom, 1.0), 0.0)
    return a2 - jump


def cut_limit_estimate(
    family: Family,
    b: float,
    window: Sequence[float] = (20.0, 40.0, 80.0),
    X: Optional[np.ndarray] = None,
    closed_form: Optional[ClosedForm] = None,
    tol: Optional[float] = None,
    label: str = "cut_limit",
) -> CutLimitReport:
    """
    Estimate the cut limit of ``family`` at offset b.

    Args:
        family: lambda -> radial metric
        b: Offset from the index at which the cut is read
        window: Increasing index ladder, at least two values
        X: Fiber points (defaults to points of the first member's atlas charts)
        closed_form: Known limit X -> forms, if any
        tol: Differences below tol count as converged

    Raises:
        DomainError: If the window has fewer than two values
    """
    tol = settings.cut_limit_tol if tol is None else tol
    window = tuple(float(w) for w in window)
    if len(window) < 2:
        raise DomainError("window", list(window), "at least two index values")
    members = [as_radial(family(lam)) for lam in window]
    if X is None:
        X = sample_fiber(members[0].atlas)
    cuts = [m.unwarped_cut(X, lam + b) for m, lam in zip(members, window)]
    diffs = [float(np.max(np.abs(c1 - c0))) for c0, c1 in zip(cuts, cuts[1:])]
    limit = aitken(*cuts[-3:]) if len(cuts) >= 3 else cuts[-1]
    if len(diffs) == 1:
        converged = diffs[0] <= tol
    else:
        converged = all(d1 <= d0 or d1 <= tol for d0, d1 in zip(diffs, diffs[1:]))
    deviation = None
    if closed_form is not None:
        deviation = float(np.max(np.abs(limit - closed_form(X))))
    rows = [{"lambda": lam, "b": b, "difference": diff} for lam, diff in zip(window[1:], diffs)]
    if not converged:
        logger.warning("cut limit did not settle", label=label, b=b, differences=diffs)
    return CutLimitReport(
        b=b,
        window=window,
        differences=diffs,
        limit=limit,
        converged=converged,
        deviation=deviation,
        label=label,
        rows=rows,
    )


def sample_fiber(atlas: FiberAtlas, per_chart: int = 5) -> np.ndarray:
    """Chart-grid points of every chart, pushed to the ambient space."""
    points = []
    for chart in atlas.charts:
        axes = [np.linspace(lo, hi, per_chart) for lo, hi in zip(chart.box.lower, chart.box.upper)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, chart.dim)
        points.append(chart.embed(grid))
    return np.concatenate(points, axis=0)


# --- families with known limits ---

def dim1_family(k_prime: int, d2: float) -> Family:
    """r -> G(k'-gon, r); its cut at r + b does not depend on r."""
    return lambda lam: g_dim1_model(k_prime, lam, d2)


def dim1_limit(k_prime: int, d2: float, b: float) -> ClosedForm:
    factor = dim1_cut_limit(k_prime, d2, b)
    atlas = FiberAtlas.circle()
    return lambda X: factor * atlas.round_form(X)


def continued_dim1_family(k_prime: int, d2: float, d: float) -> Family:
    """lambda -> C_d(G(k'-gon, lambda))."""
    return continuation(dim1_family(k_prime, d2), d)


def continued_dim1_limit(k_prime: int, d2: float, d: float, b: float) -> ClosedForm:
    atlas = FiberAtlas.circle()

    def base_limit(X: np.ndarray, offset: float) -> np.ndarray:
        return dim1_cut_limit(k_prime, d2, offset) * atlas.round_form(X)

    return continued_cut_limit(base_limit, atlas.round_form, b, d)


def reindexed_family(base: Family, beta0: float, k: int = 1) -> Family:
    """s -> E_k(h_{lambda(s)}) with lambda(s) = asinh(sinh(s) sin(beta0))."""
    def member(s: float) -> RadialMetric:
        return hyperbolic_extension(base(float(reindex_extension_family(beta0, s))), k)

    return member


def reindexed_limit(
    base_limit: Callable[[np.ndarray, float], np.ndarray],
    beta0: float,
    b: float,
    k: int = 1,
) -> ClosedForm:
    """
    cos^2(beta) sigma + sin^2(beta) hhat_{inf + b + ln(sin(beta)/sin(beta0))} + dbeta^2.

    ``base_limit(u, offset)`` is the base family's limit cut at the normal direction u.
    Points on the axis carry the round metric.
    """
    def form(X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.eye(X.shape[-1]) - X[:, :, None] * X[:, None, :]
        for i, x in enumerate(X):
            normal = x[k:]
            sin_beta = float(np.linalg.norm(normal))
            if sin_beta == 0.0:
                continue
            u = normal / sin_beta
            beta = math.asin(min(sin_beta, 1.0))
            proj = np.eye(len(u)) - np.outer(u, u)
            target = base_limit(u[None, :], shift_limit(beta, b, beta0))[0]
            out[i, k:, k:] += proj @ (target - proj) @ proj
        return out

    return form


def extension_points(k: int, n: int, betas: Sequence[float], rng: np.random.Generator) -> np.ndarray:
    """Points (cos(beta) theta, sin(beta) u) of S^{n+k} with random unit theta and u."""
    rows = []
    for beta in betas:
        theta = rng.standard_normal(k)
        u = rng.standard_normal(n + 1)
        theta /= np.linalg.norm(theta)
        u /= np.linalg.norm(u)
        rows.append(np.concatenate([math.cos(beta) * theta, math.sin(beta) * u]))
    return np.array(rows)


def surface_family(k_prime: int, d2: float, varsigma: float) -> Family:
    """top -> E_1(G(k'-gon, r(top))) with sinh r(top) = varsigma sinh(top)."""
    return reindexed_family(dim1_family(k_prime, d2), math.asin(varsigma), 1)


def surface_limit(k_prime: int, d2: float, varsigma: float, b: float) -> ClosedForm:
    atlas = FiberAtlas.circle()

    def base_limit(u: np.ndarray, offset: float) -> np.ndarray:
        return dim1_cut_limit(k_prime, d2, offset) * atlas.round_form(u)

    return reindexed_limit(base_limit, math.asin(varsigma), b, 1)
