"""Fixed finite atlases on fiber manifolds (circles, spheres, flat tori)."""
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from src.metricfield.chart import CoordinateBox
from src.utils.errors import ParameterError


@dataclass(frozen=True)
class FiberChart:
    """
    One chart y -> X(y) of a fiber embedded in an ambient Euclidean space.

    ``embed`` maps (..., n) to ambient points (..., N); ``jacobian`` returns dX/dy with
    shape (..., N, n). Ambient symmetric forms Q pull back to J^T Q J.
    """

    name: str
    box: CoordinateBox
    embed: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]

    @property
    def dim(self) -> int:
        return self.box.dim

    def pullback(self, y: np.ndarray, form: np.ndarray) -> np.ndarray:
        """Chart components J^T Q J of an ambient form Q given at X(y)."""
        jac = self.jacobian(y)
        return np.einsum("...ai,...ab,...bj->...ij", jac, form, jac)

    def center(self) -> np.ndarray:
        return 0.5 * (np.asarray(self.box.lower) + np.asarray(self.box.upper))


@dataclass(frozen=True)
class FiberAtlas:
    """A fiber manifold together with the atlas every norm is taken against."""

    name: str
    dim: int
    ambient_dim: int
    charts: Tuple[FiberChart, ...]
    spherical: bool = True

    def tangent_projector(self, points: np.ndarray) -> np.ndarray:
        """Orthogonal projector onto the tangent space at ambient points."""
        eye = np.eye(self.ambient_dim)
        if not self.spherical:
            return np.broadcast_to(eye, np.shape(points)[:-1] + eye.shape).copy()
        points = np.asarray(points, dtype=float)
        return eye - points[..., :, None] * points[..., None, :]

    def round_form(self, points: np.ndarray) -> np.ndarray:
        """Ambient form of the canonical metric (round or flat)."""
        return self.tangent_projector(points)

    @classmethod
    def circle(cls, half_width: float = np.pi / 3) -> "FiberAtlas":
        """S^1 with four arc-length charts centered at 0, pi/2, pi, 3pi/2."""
        charts: List[FiberChart] = []
        for k in range(4):
            center = 0.5 * np.pi * k

            def embed(y: np.ndarray, c: float = center) -> np.ndarray:
                theta = c + y[..., 0]
                return np.stack([np.cos(theta), np.sin(theta)], axis=-1)

            def jacobian(y: np.ndarray, c: float = center) -> np.ndarray:
                theta = c + y[..., 0]
                return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)[..., None]

            charts.append(FiberChart(
                name=f"arc{k}",
                box=CoordinateBox(lower=(-half_width,), upper=(half_width,)),
                embed=embed,
                jacobian=jacobian,
            ))
        return cls(name="S1", dim=1, ambient_dim=2, charts=tuple(charts))

    @classmethod
    def sphere(cls, n: int) -> "FiberAtlas":
        """S^n with the 2(n + 1) hemispherical gnomonic charts on [-1, 1]^n."""
        if n < 1:
            raise ParameterError("n", n, "n >= 1")
        charts: List[FiberChart] = []
        for axis in range(n + 1):
            others = [i for i in range(n + 1) if i != axis]
            for sign in (1.0, -1.0):
                inclusion = np.zeros((n + 1, n))
                inclusion[others, range(n)] = 1.0

                def lift(y: np.ndarray, a: int = axis, s: float = sign, e: np.ndarray = inclusion) -> np.ndarray:
                    v = np.einsum("ai,...i->...a", e, y)
                    v[..., a] = s
                    return v

                def embed(y: np.ndarray, lift=lift) -> np.ndarray:
                    v = lift(y)
                    return v / np.linalg.norm(v, axis=-1, keepdims=True)

                def jacobian(y: np.ndarray, lift=lift, e: np.ndarray = inclusion) -> np.ndarray:
                    v = lift(y)
                    norm = np.linalg.norm(v, axis=-1)[..., None, None]
                    x = v / norm[..., 0]
                    proj = np.eye(n + 1) - x[..., :, None] * x[..., None, :]
                    return proj @ e / norm

                charts.append(FiberChart(
                    name=f"{'+' if sign > 0 else '-'}x{axis}",
                    box=CoordinateBox(lower=(-1.0,) * n, upper=(1.0,) * n),
                    embed=embed,
                    jacobian=jacobian,
                ))
        return cls(name=f"S{n}", dim=n, ambient_dim=n + 1, charts=tuple(charts))

    @classmethod
    def flat(cls, n: int, lower: float = 0.0, upper: float = 1.0, name: str = "") -> "FiberAtlas":
        """A single flat chart whose coordinates are the ambient coordinates on [lower, upper]^n."""
        if n < 1:
            raise ParameterError("n", n, "n >= 1")

        def embed(y: np.ndarray) -> np.ndarray:
            return np.array(y, dtype=float)

        def jacobian(y: np.ndarray) -> np.ndarray:
            return np.broadcast_to(np.eye(n), y.shape[:-1] + (n, n)).copy()

        chart = FiberChart(
            name="flat",
            box=CoordinateBox(lower=(lower,) * n, upper=(upper,) * n),
            embed=embed,
            jacobian=jacobian,
        )
        return cls(name=name or f"T{n}", dim=n, ambient_dim=n, charts=(chart,), spherical=False)

    @classmethod
    def ball(cls, n: int) -> "FiberAtlas":
        """The cube inscribed in the unit ball B^n, as one flat chart."""
        half = 1.0 / np.sqrt(n)
        return cls.flat(n, -half, half, name=f"B{n}")
