"""Parameter searches for pinched smoothed metrics."""
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from src.complexes import polygon_suspension
from src.config import settings
from src.metricfield import profile_curvature
from src.models import CheckResult, SmoothingParams
from src.smoothing.dim1 import dim1_curvature, g_dim1_model, link_scale, mu_profile
from src.smoothing.smoothed import surface_curvature_panel
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

GRID_POINTS = 10_000


@dataclass
class PinchResult:
    """A search outcome; ``found`` is False when the declared bounds were exhausted."""

    found: bool
    r: Optional[float] = None
    d: Optional[float] = None
    worst: Optional[float] = None
    checks: List[CheckResult] = field(default_factory=list)
    rows: List[dict] = field(default_factory=list)
    attempts: List[dict] = field(default_factory=list)


def doubling(d_min: float, d_max: float) -> List[float]:
    if not 0.0 < d_min <= d_max:
        raise ParameterError("d_min", d_min, f"0 < d_min <= d_max = {d_max:g}")
    out = [float(d_min)]
    while out[-1] * 2.0 <= d_max:
        out.append(out[-1] * 2.0)
    return out


def profile_grid(r: float, d: float, points: int = GRID_POINTS) -> np.ndarray:
    """A radial grid spanning the transition band with one unit of margin."""
    return np.linspace(max(r - d - 1.0, 0.25), r + 1.0, points)


def pinch_circle(k_prime: int, eps: float, d_min: float = 4.0, d_max: float = 64.0, offset: float = 8.0) -> PinchResult:
    """
    Doubling search over d (with r = 2d + offset) for max |K + 1| <= eps on the k'-gon.

    The closed-form curvature is used on the grid and cross-checked against finite
    differences of the warping function sinh(t) sqrt(mu(t)).

    Raises:
        ParameterError: Unless k' >= 3 and eps > 0
    """
    if not eps > 0.0:
        raise ParameterError("eps", eps, "eps > 0")
    start = time.time()
    tol = settings.exact_region_tol
    attempts: List[dict] = []
    for d in doubling(d_min, d_max):
        r = 2.0 * d + offset
        t = profile_grid(r, d)
        K = dim1_curvature(k_prime, r, d, t)
        worst = float(np.max(np.abs(K + 1.0)))
        attempts.append({"d": d, "r": r, "worst": worst})
        logger.debug("pinch attempt", k_prime=k_prime, d=d, r=r, worst=worst)
        if worst > eps:
            continue

        mu = mu_profile(k_prime, r, d)
        warp = lambda s: np.sinh(s) * np.sqrt(mu(s))  # noqa: E731
        inner_t = t[(t > 1.0) & (t < r + 0.5)]
        fd_gap = float(np.max(np.abs(profile_curvature(warp, inner_t, settings.curvature_step) - dim1_curvature(k_prime, r, d, inner_t))))
        model = g_dim1_model(k_prime, r, d)
        X = np.array([[1.0, 0.0], [0.0, 1.0], [np.sqrt(0.5), np.sqrt(0.5)]])
        outer_t = np.linspace(r, r + 5.0, 11)
        inner_r = np.linspace(0.5, r - d, 11)
        canonical = link_scale(k_prime) * model.atlas.round_form(X)
        outer_gap = max(float(np.max(np.abs(model.unwarped_cut(X, s) - canonical))) for s in outer_t)
        inner_gap = max(float(np.max(np.abs(model.unwarped_cut(X, s) - model.atlas.round_form(X)))) for s in inner_r)
        checks = [
            CheckResult.below("pinching", worst, eps, "max |K + 1| on the radial grid", k_prime=k_prime, points=len(t)),
            CheckResult.below("finite_difference_agreement", fd_gap, 1e-4, "|K_closed - K_fd|"),
            CheckResult.below("canonical_outside_r", outer_gap, tol, "G = K sigma for t >= r"),
            CheckResult.below("hyperbolic_inside", inner_gap, tol, "G = sigma for t <= r - d2"),
        ]
        rows = [{"t": float(s), "K": float(k)} for s, k in zip(t[::10], K[::10])]
        logger.info("pinch search succeeded", k_prime=k_prime, d=d, r=r, worst=worst, elapsed=round(time.time() - start, 3))
        return PinchResult(found=True, r=r, d=d, worst=worst, checks=checks, rows=rows, attempts=attempts)

    logger.info("pinch search exhausted", k_prime=k_prime, d_max=d_max, elapsed=round(time.time() - start, 3))
    best = min(a["worst"] for a in attempts)
    return PinchResult(
        found=False,
        worst=best,
        checks=[CheckResult.below("pinching", best, eps, f"search exhausted at d <= {d_max:g}")],
        attempts=attempts,
    )


def pinch_surface(
    L: int,
    eps: float,
    widths: Sequence[float] = (32.0, 64.0, 128.0),
    samples: int = 48,
    rng: Optional[np.random.Generator] = None,
    xi: Optional[float] = None,
    c: Optional[float] = None,
    varsigma: Optional[float] = None,
) -> PinchResult:
    """
    Search d_2 = d_3 = d over ``widths`` (r = 2d + 8) until sampled curvatures of the
    smoothed suspension of an L-gon lie within eps of -1.
    """
    rng = rng or np.random.default_rng(settings.seed)
    complex_ = polygon_suspension(L)
    attempts: List[dict] = []
    for d in widths:
        params = SmoothingParams(
            xi=settings.default_xi if xi is None else xi,
            d=[d, d],
            r=2.0 * d + 8.0,
            c=settings.default_c if c is None else c,
            varsigma=settings.default_varsigma if varsigma is None else varsigma,
        )
        checks, rows = surface_curvature_panel(complex_, params, samples, rng, eps)
        worst = checks[0].measured
        attempts.append({"d": d, "r": params.r, "worst": worst})
        if checks[0].passed:
            return PinchResult(found=True, r=params.r, d=d, worst=worst, checks=checks, rows=rows, attempts=attempts)
    best = min(a["worst"] for a in attempts)
    return PinchResult(
        found=False,
        worst=best,
        checks=[CheckResult.below("surface_pinching", best, eps, f"search exhausted at d <= {max(widths):g}")],
        attempts=attempts,
    )
