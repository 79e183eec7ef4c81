"""Symmetric bilinear-form fields on coordinate domains."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from src.metricfield.chart import CoordinateBox, ModelChart
from src.utils.errors import MetricValidationError, ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]


class FieldKind(str, Enum):
    """How a field was produced."""

    WARPED_VARIABLE = "warped_variable"
    TABULATED = "tabulated"
    GENERAL = "general"


@dataclass(frozen=True)
class MetricField:
    """
    Components g_ij of a metric on a coordinate box.

    The evaluator is vectorized: points of shape (..., N) map to (..., N, N). The last
    coordinate is the radial/height coordinate t.
    """

    domain: CoordinateBox
    evaluator: Evaluator
    kind: FieldKind = FieldKind.GENERAL
    chart: Optional[ModelChart] = None
    label: str = field(default="")

    @property
    def dim(self) -> int:
        return self.domain.dim

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.evaluator(np.asarray(points, dtype=float))

    @classmethod
    def on_chart(
        cls,
        chart: ModelChart,
        evaluator: Evaluator,
        kind: FieldKind = FieldKind.GENERAL,
        label: str = "",
    ) -> "MetricField":
        return cls(domain=chart.box, evaluator=evaluator, kind=kind, chart=chart, label=label)

    @classmethod
    def from_pointwise(
        cls,
        domain: CoordinateBox,
        fn: Callable[[np.ndarray], np.ndarray],
        kind: FieldKind = FieldKind.GENERAL,
        chart: Optional[ModelChart] = None,
        label: str = "",
    ) -> "MetricField":
        """Wrap a single-point function (N,) -> (N, N) into a vectorized field."""
        dim = domain.dim

        def evaluator(points: np.ndarray) -> np.ndarray:
            flat = points.reshape(-1, dim)
            values = np.stack([np.asarray(fn(p), dtype=float) for p in flat])
            return values.reshape(points.shape[:-1] + (dim, dim))

        return cls(domain=domain, evaluator=evaluator, kind=kind, chart=chart, label=label)

    @classmethod
    def warped(
        cls,
        domain: CoordinateBox,
        profile: Callable[[np.ndarray], np.ndarray],
        fiber: Callable[[np.ndarray, np.ndarray], np.ndarray],
        chart: Optional[ModelChart] = None,
        label: str = "",
    ) -> "MetricField":
        """
        The warped variable metric w(t)^2 g_t(x) + dt^2.

        Args:
            domain: Coordinate box whose last axis is t
            profile: Warping function w(t)
            fiber: Fiber components g_t(x), (x (..., n), t (...)) -> (..., n, n)
        """
        n = domain.dim - 1

        def evaluator(points: np.ndarray) -> np.ndarray:
            x = points[..., :n]
            t = points[..., -1]
            w = np.asarray(profile(t), dtype=float)
            out = np.zeros(points.shape[:-1] + (n + 1, n + 1))
            out[..., :n, :n] = (w ** 2)[..., None, None] * fiber(x, t)
            out[..., n, n] = 1.0
            return out

        return cls(domain=domain, evaluator=evaluator, kind=FieldKind.WARPED_VARIABLE, chart=chart, label=label)

    @classmethod
    def from_samples(
        cls,
        axes: Sequence[np.ndarray],
        values: np.ndarray,
        chart: Optional[ModelChart] = None,
        label: str = "",
    ) -> "MetricField":
        """
        Tabulated field interpolated with cubic splines on a regular grid.

        Args:
            axes: Node coordinates per axis
            values: Components on the grid, shape (*counts, N, N)
        """
        dim = len(axes)
        if values.shape[dim:] != (dim, dim):
            raise ParameterError("values", values.shape, f"trailing shape ({dim}, {dim})")
        interpolator = RegularGridInterpolator(
            tuple(axes), values.reshape(values.shape[:dim] + (dim * dim,)), method="cubic"
        )

        def evaluator(points: np.ndarray) -> np.ndarray:
            flat = interpolator(points.reshape(-1, dim))
            sym = flat.reshape(-1, dim, dim)
            sym = 0.5 * (sym + np.swapaxes(sym, -1, -2))
            return sym.reshape(points.shape[:-1] + (dim, dim))

        domain = CoordinateBox(
            lower=tuple(float(ax[0]) for ax in axes),
            upper=tuple(float(ax[-1]) for ax in axes),
        )
        return cls(domain=domain, evaluator=evaluator, kind=FieldKind.TABULATED, chart=chart, label=label)

    def validate(self, points: Optional[np.ndarray] = None, step: Optional[float] = None, atol: float = 1e-12) -> None:
        """
        Check symmetry, positive definiteness and the variable-metric row.

        Raises:
            MetricValidationError: On the first offending sample
        """
        if points is None:
            points = self.domain.grid(step or 0.25).reshape(-1, self.dim)
        points = np.asarray(points, dtype=float).reshape(-1, self.dim)
        g = self(points)

        asym = np.max(np.abs(g - np.swapaxes(g, -1, -2)), axis=(-1, -2))
        scale = np.maximum(1.0, np.max(np.abs(g), axis=(-1, -2)))
        bad = np.nonzero(asym > atol * scale)[0]
        if bad.size:
            raise MetricValidationError("components are not symmetric", point=points[bad[0]].tolist())

        for p, matrix in zip(points, g):
            try:
                np.linalg.cholesky(matrix)
            except np.linalg.LinAlgError:
                raise MetricValidationError("components are not positive definite", point=p.tolist())

        if self.kind == FieldKind.WARPED_VARIABLE:
            last = np.zeros(self.dim)
            last[-1] = 1.0
            off = np.max(np.abs(g[:, -1, :] - last), axis=-1)
            bad = np.nonzero(off > 0.0)[0]
            if bad.size:
                raise MetricValidationError("radial row is not (0, ..., 0, 1)", point=points[bad[0]].tolist())
        logger.debug("field validated", label=self.label, samples=len(points))

    def sample_rows(self, points: np.ndarray) -> List[Dict[str, Any]]:
        """Rows with coordinates and row-major components, for CSV/JSON dumps."""
        points = np.asarray(points, dtype=float).reshape(-1, self.dim)
        g = self(points)
        rows = []
        for p, matrix in zip(points, g):
            row: Dict[str, Any] = {f"x{i}": float(p[i]) for i in range(self.dim)}
            for i in range(self.dim):
                for j in range(self.dim):
                    row[f"g{i}{j}"] = float(matrix[i, j])
            rows.append(row)
        return rows


def hyperbolic_model(chart: ModelChart) -> MetricField:
    """The reference metric e^{2t} sigma_{R^n} + dt^2 on T_xi."""
    n = chart.n

    def fiber(x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n))

    return MetricField.warped(chart.box, np.exp, fiber, chart=chart, label="sigma")


def constant_field(domain: CoordinateBox, matrix: np.ndarray, label: str = "") -> MetricField:
    """A field with the same components everywhere."""
    matrix = np.asarray(matrix, dtype=float)

    def evaluator(points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(matrix, points.shape[:-1] + matrix.shape).copy()

    return MetricField(domain=domain, evaluator=evaluator, label=label)
