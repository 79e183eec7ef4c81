"""Sampled curvature of the three warped models of hyperbolic space."""
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.metricfield.atlas import FiberAtlas
from src.metricfield.chart import CoordinateBox
from src.metricfield.curvature import sectional_curvatures
from src.metricfield.field import MetricField
from src.models import CheckResult
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

MODEL_TOL = 1e-3

# (field, sampling lower corner, sampling upper corner)
ModelEntry = Tuple[MetricField, List[float], List[float]]


def _flat(n: int):
    def fiber(x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n)).copy()

    return fiber


def _round_s2(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    atlas = FiberAtlas.sphere(2)
    chart = atlas.charts[0]
    return chart.pullback(x, atlas.round_form(chart.embed(x)))


def _half_plane(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    y = x[..., 1]
    return np.eye(2) / (y ** 2)[..., None, None]


def model_fields(n: int) -> Dict[str, ModelEntry]:
    """
    sinh^2(t) sigma_{S^n}, e^{2t} sigma_{R^n} and cosh^2(t) sigma_{H^n}, each plus dt^2.

    The round S^2 is read in a gnomonic chart and H^2 in the upper half plane.

    Raises:
        ParameterError: Unless n is 1 or 2
    """
    if n not in (1, 2):
        raise ParameterError("n", n, "n in {1, 2}")
    if n == 1:
        sphere_fiber, hyperbolic_fiber = _flat(1), _flat(1)
        h_lower, h_upper = [-0.9], [0.9]
        h_box = CoordinateBox((-1.0, -2.0), (1.0, 2.0))
    else:
        sphere_fiber, hyperbolic_fiber = _round_s2, _half_plane
        h_lower, h_upper = [-0.9, 0.6], [0.9, 1.9]
        h_box = CoordinateBox((-1.0, 0.5, -2.0), (1.0, 2.0, 2.0))
    lo, hi = [-0.8] * n, [0.8] * n
    return {
        "polar": (
            MetricField.warped(CoordinateBox(tuple(lo + [0.5]), tuple(hi + [6.0])), np.sinh, sphere_fiber, label="sinh"),
            [-0.7] * n + [0.6],
            [0.7] * n + [5.9],
        ),
        "horospherical": (
            MetricField.warped(CoordinateBox(tuple([-1.0] * n + [-2.5]), tuple([1.0] * n + [2.5])), np.exp, _flat(n), label="exp"),
            [-0.5] * n + [-1.5],
            [0.5] * n + [1.5],
        ),
        "extension": (
            MetricField.warped(h_box, np.cosh, hyperbolic_fiber, label="cosh"),
            h_lower + [-1.9],
            h_upper + [1.9],
        ),
    }


def model_curvature_panel(
    samples: int,
    rng: np.random.Generator,
    tol: Optional[float] = None,
    dims: Tuple[int, ...] = (1, 2),
) -> Tuple[List[CheckResult], List[dict]]:
    """Random point/plane samples of every model; each must have curvature within tol of -1."""
    tol = MODEL_TOL if tol is None else tol
    start = time.time()
    checks: List[CheckResult] = []
    rows: List[dict] = []
    for n in dims:
        for name, (field, lower, upper) in model_fields(n).items():
            lo, hi = np.asarray(lower), np.asarray(upper)
            points = lo + (hi - lo) * rng.uniform(size=(samples, n + 1))
            u = rng.normal(size=(samples, n + 1))
            v = rng.normal(size=(samples, n + 1))
            K = sectional_curvatures(field, points, u, v)
            worst = float(np.max(np.abs(K + 1.0)))
            checks.append(CheckResult.below(f"{name}_n{n}", worst, tol, "max |K + 1|", samples=samples))
            rows.extend({"model": name, "n": n, "K": float(k)} for k in K)
    logger.info("model curvature sweep finished", samples=samples, checks=len(checks), elapsed=round(time.time() - start, 3))
    return checks, rows
