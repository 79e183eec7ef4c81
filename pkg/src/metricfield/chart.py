"""Coordinate boxes, model charts and tangent planes."""
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from src.utils.errors import ParameterError, ResolutionError

# Fourth-order central stencils reach two nodes on each side
STENCIL_REACH = 2


@dataclass(frozen=True)
class CoordinateBox:
    """Axis-aligned box [lower, upper] in coordinate space."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ParameterError("box", (self.lower, self.upper), "matching corner dimensions")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ParameterError("box", (self.lower, self.upper), "lower < upper on every axis")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def margin(self, points: np.ndarray) -> np.ndarray:
        """Smallest distance from each point to a face of the box (negative outside)."""
        points = np.asarray(points, dtype=float)
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return np.min(np.minimum(points - lo, hi - points), axis=-1)

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.margin(points) >= 0.0

    def axes(self, step: float) -> List[np.ndarray]:
        """Grid nodes per axis, endpoints included, spacing as close to ``step`` as fits."""
        nodes = []
        for lo, hi in zip(self.lower, self.upper):
            count = int(round((hi - lo) / step)) + 1
            nodes.append(np.linspace(lo, hi, max(count, 2)))
        return nodes

    def grid(self, step: float) -> np.ndarray:
        """All grid nodes as an array of shape (*counts, dim)."""
        return np.stack(np.meshgrid(*self.axes(step), indexing="ij"), axis=-1)


@dataclass(frozen=True)
class ModelChart:
    """
    The model T_xi = B^n x I_xi with I_xi = (-(1 + xi), 1 + xi).

    Coordinates are (x_1, ..., x_n, t); the reference metric is e^{2t} sigma_{R^n} + dt^2.
    """

    n: int
    xi: float
    grid_step: float

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n", self.n, "n >= 1")
        if self.xi <= 0.0:
            raise ParameterError("xi", self.xi, "xi > 0")
        if self.grid_step <= 0.0:
            raise ParameterError("grid_step", self.grid_step, "grid_step > 0")
        for step, span in zip(self.steps, self.spans):
            if span / step < 2 * STENCIL_REACH:
                raise ResolutionError(
                    f"grid_step {self.grid_step} leaves fewer than 4 layers on an axis of length {span}",
                    layers=int(span / step),
                )

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def half_height(self) -> float:
        return 1.0 + self.xi

    @property
    def box(self) -> CoordinateBox:
        return CoordinateBox(
            lower=tuple([-1.0] * self.n + [-self.half_height]),
            upper=tuple([1.0] * self.n + [self.half_height]),
        )

    @property
    def spans(self) -> Tuple[float, ...]:
        return tuple(hi - lo for lo, hi in zip(self.box.lower, self.box.upper))

    @property
    def steps(self) -> Tuple[float, ...]:
        """Actual per-axis spacing of the coarse grid."""
        return tuple(float(ax[1] - ax[0]) for ax in self.axes())

    def axes(self, refine: bool = False) -> List[np.ndarray]:
        """Grid nodes per axis; ``refine`` halves the spacing and keeps every coarse node."""
        coarse = self.box.axes(self.grid_step)
        if not refine:
            return coarse
        return [np.linspace(ax[0], ax[-1], 2 * (len(ax) - 1) + 1) for ax in coarse]

    def grid(self, refine: bool = False) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes(refine), indexing="ij"), axis=-1)

    def in_domain(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        ball = np.linalg.norm(points[..., :self.n], axis=-1) < 1.0
        return ball & (np.abs(points[..., -1]) < self.half_height)

    def interior_mask(self, coords: np.ndarray, order: int) -> np.ndarray:
        """
        Nodes where every stencil of the given order stays inside B^n x I_xi.

        Args:
            coords: Node coordinates, shape (..., n + 1)
            order: Highest derivative order that will be evaluated

        Returns:
            Boolean mask over the nodes
        """
        reach = STENCIL_REACH * max(self.steps) if order > 0 else 0.0
        ball = np.linalg.norm(coords[..., :self.n], axis=-1) <= 1.0 - reach
        height = np.abs(coords[..., -1]) <= self.half_height - reach
        return ball & height


@dataclass(frozen=True)
class PlaneSpec:
    """A tangent 2-plane at ``point`` spanned by ``u`` and ``v``."""

    point: np.ndarray
    u: np.ndarray
    v: np.ndarray
    label: str = field(default="")

    @classmethod
    def coordinate(cls, point: Sequence[float], i: int, j: int) -> "PlaneSpec":
        """The plane spanned by the coordinate directions e_i and e_j."""
        point = np.asarray(point, dtype=float)
        basis = np.eye(point.shape[-1])
        return cls(point=point, u=basis[i], v=basis[j], label=f"e{i}^e{j}")
