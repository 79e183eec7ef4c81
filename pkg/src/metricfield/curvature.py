"""Riemann and sectional curvature from finite-difference Christoffel symbols."""
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from src.config import settings
from src.metricfield.chart import STENCIL_REACH, PlaneSpec
from src.metricfield.field import MetricField
from src.metricfield.finite_differences import D1, D2, stencil_partials
from src.utils.errors import BoundaryError, DegeneratePlaneError

DEGENERATE_PLANE = 1e-12


@dataclass(frozen=True)
class CurvatureData:
    """Curvature ingredients at a batch of points.

    ``riemann[p, l, k, i, j]`` holds R^l_{kij} with R(d_i, d_j) d_k = R^l_{kij} d_l.
    ``scale`` is D = diag(g_ii)^-1/2, used to evaluate sectional curvatures in a frame
    where the metric has unit diagonal.
    """

    points: np.ndarray
    metric: np.ndarray
    christoffel: np.ndarray
    riemann: np.ndarray
    scale: np.ndarray

    def lowered(self) -> np.ndarray:
        """R_{lkij} = g_{la} R^a_{kij}."""
        return np.einsum("pla,pakij->plkij", self.metric, self.riemann)

    def sectional(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """
        <R(u, v) v, u> / (|u|^2 |v|^2 - <u, v>^2) for per-point vectors u, v.

        Raises:
            DegeneratePlaneError: If u and v are numerically dependent
        """
        d = self.scale
        u = np.broadcast_to(np.asarray(u, dtype=float), self.points.shape) / d
        v = np.broadcast_to(np.asarray(v, dtype=float), self.points.shape) / d
        u = u / np.linalg.norm(u, axis=-1, keepdims=True)
        v = v / np.linalg.norm(v, axis=-1, keepdims=True)
        g = d[:, :, None] * self.metric * d[:, None, :]
        r = (
            self.riemann
            * d[:, None, :, None, None]
            * d[:, None, None, :, None]
            * d[:, None, None, None, :]
            / d[:, :, None, None, None]
        )
        num = np.einsum("plkij,pi,pj,pk,plq,pq->p", r, u, v, v, g, u)
        uu = np.einsum("pi,pij,pj->p", u, g, u)
        vv = np.einsum("pi,pij,pj->p", v, g, v)
        uv = np.einsum("pi,pij,pj->p", u, g, v)
        den = uu * vv - uv ** 2
        if np.any(den < DEGENERATE_PLANE):
            raise DegeneratePlaneError(float(np.min(den)))
        return num / den


def curvature_data(f: MetricField, points: np.ndarray, h: Optional[float] = None) -> CurvatureData:
    """
    Christoffel symbols and the Riemann tensor at ``points`` (shape (P, N) or (N,)).

    Raises:
        BoundaryError: If a stencil would leave the field's domain
    """
    h = settings.curvature_step if h is None else h
    points = np.atleast_2d(np.asarray(points, dtype=float))
    margin = f.domain.margin(points)
    if np.any(margin < STENCIL_REACH * h):
        worst = int(np.argmin(margin))
        raise BoundaryError(points[worst].tolist(), STENCIL_REACH * h)

    g, dg, d2g = stencil_partials(f, points, h)
    scale = 1.0 / np.sqrt(np.einsum("pii->pi", g))
    balanced = scale[:, :, None] * g * scale[:, None, :]
    g_inv = scale[:, :, None] * np.linalg.inv(balanced) * scale[:, None, :]

    # Gamma_{a,ij} = 1/2 (d_i g_aj + d_j g_ai - d_a g_ij); dg[p, m, i, j] = d_m g_ij
    lowered = 0.5 * (
        np.einsum("piaj->paij", dg)
        + np.einsum("pjai->paij", dg)
        - dg
    )
    gamma = np.einsum("pla,paij->plij", g_inv, lowered)

    d_lowered = 0.5 * (
        np.einsum("pmiaj->pmaij", d2g)
        + np.einsum("pmjai->pmaij", d2g)
        - d2g
    )
    d_inv = -np.einsum("pla,pmab,pbc->pmlc", g_inv, dg, g_inv)
    d_gamma = (
        np.einsum("pmla,paij->pmlij", d_inv, lowered)
        + np.einsum("pla,pmaij->pmlij", g_inv, d_lowered)
    )

    riemann = (
        np.einsum("pilqk->plkiq", d_gamma)
        - np.einsum("pqlik->plkiq", d_gamma)
        + np.einsum("plim,pmqk->plkiq", gamma, gamma)
        - np.einsum("plqm,pmik->plkiq", gamma, gamma)
    )
    return CurvatureData(points=points, metric=g, christoffel=gamma, riemann=riemann, scale=scale)


def christoffel_symbols(f: MetricField, p: np.ndarray, h: Optional[float] = None) -> np.ndarray:
    """Gamma^l_{ij} at a point, shape (N, N, N)."""
    return curvature_data(f, p, h).christoffel[0]


def riemann_curvature(f: MetricField, p: np.ndarray, h: Optional[float] = None) -> np.ndarray:
    """R^l_{kij} at a point, shape (N, N, N, N)."""
    return curvature_data(f, p, h).riemann[0]


def sectional_curvature(f: MetricField, plane: PlaneSpec, h: Optional[float] = None) -> float:
    """
    Sectional curvature of the plane spanned by ``plane.u`` and ``plane.v``.

    Raises:
        BoundaryError: If the point is within two steps of the domain boundary
        DegeneratePlaneError: If the denominator is below 1e-12
    """
    data = curvature_data(f, plane.point, h)
    return float(data.sectional(plane.u, plane.v)[0])


def sectional_curvatures(
    f: MetricField,
    points: np.ndarray,
    u: np.ndarray,
    v: np.ndarray,
    h: Optional[float] = None,
) -> np.ndarray:
    """Sectional curvatures for a batch of points and per-point plane vectors."""
    return curvature_data(f, points, h).sectional(u, v)


@dataclass(frozen=True)
class Profile:
    """A warping function with its first two derivatives."""

    value: Callable[[np.ndarray], np.ndarray]
    d1: Callable[[np.ndarray], np.ndarray]
    d2: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return self.value(t)

    @classmethod
    def sinh(cls) -> "Profile":
        return cls(np.sinh, np.cosh, np.sinh, "sinh")

    @classmethod
    def cosh(cls) -> "Profile":
        return cls(np.cosh, np.sinh, np.cosh, "cosh")

    @classmethod
    def exp(cls) -> "Profile":
        return cls(np.exp, np.exp, np.exp, "exp")

    @classmethod
    def sin(cls) -> "Profile":
        return cls(np.sin, np.cos, lambda t: -np.sin(t), "sin")


def warped_sectional(w: Profile, fiber_curvature: float, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Curvatures of w(t)^2 h + dt^2 for a fiber metric h of constant curvature K_h.

    Returns:
        (K_radial, K_fiber) = (-w''/w, (K_h - w'^2) / w^2)
    """
    t = np.asarray(t, dtype=float)
    value = w.value(t)
    radial = -w.d2(t) / value
    fiber = (fiber_curvature - w.d1(t) ** 2) / value ** 2
    return radial, fiber


def profile_curvature(f: Callable[[np.ndarray], np.ndarray], t: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """K = -f''/f of the surface f(t)^2 dtheta^2 + dt^2, by a five-point stencil."""
    t = np.asarray(t, dtype=float)
    second = sum(w * f(t + k * h) for k, w in D2.items()) / h ** 2
    return -second / f(t)


def profile_slope(f: Callable[[np.ndarray], np.ndarray], t: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """f'(t) by a four-point stencil."""
    t = np.asarray(t, dtype=float)
    return sum(w * f(t + k * h) for k, w in D1.items()) / h
