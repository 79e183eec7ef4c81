"""Charts of excess xi for warped variable metrics.

A variable metric C(y, t) + dt^2, given in a fiber chart by its full cut C, is pulled
back to the model T_xi by

    phi(x, t) = (y0 + e^{-t0} A x, t0 + t)

where A = F^{-1} and e^{-2 t0} C(y0, t0) = F^T F. The factor F comes from the
eigendecomposition, so the pulled-back metric equals the identity at the origin.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.metricfield.chart import ModelChart
from src.metricfield.field import FieldKind, MetricField, hyperbolic_model
from src.metricfield.norms import NormWitness, ck_seminorm_witness
from src.utils.errors import MetricValidationError

CutFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def balanced_factor(matrix: np.ndarray) -> np.ndarray:
    """F with F^T F = matrix and |F|, |F^-1| controlled by the extreme eigenvalues."""
    eigenvalues, vectors = np.linalg.eigh(matrix)
    if np.any(eigenvalues <= 0.0):
        raise MetricValidationError("cut is not positive definite at the chart center")
    return np.sqrt(eigenvalues)[:, None] * vectors.T


@dataclass(frozen=True)
class PullbackChart:
    """A chart of excess xi centered at (y0, t0) and the metric it pulls back."""

    chart: ModelChart
    center: np.ndarray
    t0: float
    frame: np.ndarray
    field: MetricField

    def deviation(self, k: int = 2) -> NormWitness:
        """|phi^* g - sigma|_{C^k}."""
        return ck_seminorm_witness(self.field, hyperbolic_model(self.chart), k)

    def image(self, points: np.ndarray) -> np.ndarray:
        """Fiber-chart coordinates (y, t) of model points (x, t)."""
        points = np.asarray(points, dtype=float)
        n = self.chart.n
        y = self.center + np.exp(-self.t0) * points[..., :n] @ self.frame.T
        return np.concatenate([y, (self.t0 + points[..., n])[..., None]], axis=-1)


def chart_pullback(cut: CutFunction, center: np.ndarray, t0: float, chart: ModelChart) -> PullbackChart:
    """
    Pull a warped variable metric back along the excess-xi chart at (center, t0).

    Args:
        cut: Full cut C(y, t) of the variable metric in a fiber chart, (..., n), (...) -> (..., n, n)
        center: Fiber-chart coordinates y0 of the chart center
        t0: Radial coordinate of the chart center
        chart: Model chart fixing n, xi and the sampling step

    Returns:
        PullbackChart whose field equals the identity at the origin
    """
    center = np.asarray(center, dtype=float)
    n = chart.n
    scale = np.exp(-2.0 * t0)
    factor = balanced_factor(scale * np.asarray(cut(center, np.asarray(t0)), dtype=float))
    frame = np.linalg.inv(factor)

    def evaluator(points: np.ndarray) -> np.ndarray:
        x = points[..., :n]
        t = points[..., n]
        y = center + np.exp(-t0) * x @ frame.T
        block = scale * np.einsum("ai,...ab,bj->...ij", frame, cut(y, t0 + t), frame)
        out = np.zeros(points.shape[:-1] + (n + 1, n + 1))
        out[..., :n, :n] = block
        out[..., n, n] = 1.0
        return out

    field = MetricField.on_chart(chart, evaluator, kind=FieldKind.WARPED_VARIABLE, label=f"pullback@{t0:g}")
    return PullbackChart(chart=chart, center=center, t0=float(t0), frame=frame, field=field)
