"""Points of an all-right complex P and of its hyperbolic cone CP."""
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from src.complexes.complex import AllRightComplex, Simplex
from src.hyptrig import asinh_exp, log_sinh, polar_to_extension
from src.utils.errors import DomainError, StarMembershipError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class ComplexPoint:
    """A point of P: nonnegative unit coordinates over the vertices of its carrier simplex."""

    carrier: Tuple[int, ...]
    coords: Tuple[float, ...]

    def __post_init__(self):
        x = np.asarray(self.coords, dtype=float)
        if len(self.carrier) != len(x) or x.size == 0:
            raise DomainError("coords", list(self.coords), f"{len(self.carrier)} coordinates")
        if np.any(x < 0.0) or abs(float(np.linalg.norm(x)) - 1.0) > UNIT_TOL:
            raise DomainError("coords", list(self.coords), "nonnegative unit vector")

    @classmethod
    def from_weights(cls, carrier: Iterable[int], weights: Iterable[float]) -> "ComplexPoint":
        """Normalize nonnegative weights to a point."""
        w = np.asarray(list(weights), dtype=float)
        return cls(tuple(carrier), tuple(w / np.linalg.norm(w)))

    @property
    def support(self) -> Simplex:
        return frozenset(v for v, x in zip(self.carrier, self.coords) if x > 0.0)

    def dense(self, complex_: AllRightComplex) -> np.ndarray:
        idx = complex_.index
        out = np.zeros(len(complex_.vertices))
        for v, x in zip(self.carrier, self.coords):
            out[idx[v]] = x
        return out


@dataclass(frozen=True)
class ConePoint:
    """sx in CP; every point with s = 0 is the cone vertex."""

    point: ComplexPoint
    s: float

    def __post_init__(self):
        if not self.s >= 0.0:
            raise DomainError("s", self.s, "[0, inf)")


def in_star(support: Iterable[int], simplex: Iterable[int], complex_: AllRightComplex) -> bool:
    """Whether a point with this support lies in the closed star of the simplex."""
    return (frozenset(support) | frozenset(simplex)) in complex_.simplices


def orthogonal_norm(point: ComplexPoint, simplex: Iterable[int]) -> float:
    """Norm of the component of x orthogonal to the span of the simplex."""
    simplex = frozenset(simplex)
    return math.sqrt(sum(x * x for v, x in zip(point.carrier, point.coords) if v not in simplex))


def angular_distance(point: ComplexPoint, simplex: Iterable[int], complex_: AllRightComplex) -> float:
    """
    Spherical distance from x to the simplex, computed in a common carrier.

    Raises:
        StarMembershipError: If x is not in the closed star of the simplex
    """
    simplex = frozenset(simplex)
    if not in_star(point.support, simplex, complex_):
        raise StarMembershipError(sorted(simplex), sorted(point.support))
    return math.asin(min(1.0, orthogonal_norm(point, simplex)))


def cone_distance(p: ConePoint, simplex: Iterable[int], complex_: AllRightComplex) -> float:
    """Distance from sx to the subcone C(simplex): sinh d = sin(gamma) sinh(s)."""
    simplex = frozenset(simplex)
    if not in_star(p.point.support, simplex, complex_):
        raise StarMembershipError(sorted(simplex), sorted(p.point.support))
    sin_gamma = orthogonal_norm(p.point, simplex)
    if sin_gamma == 0.0 or p.s == 0.0:
        return 0.0
    return float(asinh_exp(math.log(sin_gamma) + log_sinh(p.s)))


def in_cone_nbhd(
    p: ConePoint,
    simplex: Iterable[int],
    width: float,
    complex_: AllRightComplex,
    open_: bool = False,
) -> bool:
    """
    Whether sx lies in the width-neighborhood of C(simplex).

    Compares sin(gamma) sinh(s) with sinh(width) in log domain; false off the star.
    """
    simplex = frozenset(simplex)
    if not in_star(p.point.support, simplex, complex_):
        return False
    sin_gamma = orthogonal_norm(p.point, simplex)
    if sin_gamma == 0.0 or p.s == 0.0:
        return True
    lhs = math.log(sin_gamma) + float(log_sinh(p.s))
    rhs = float(log_sinh(width))
    return lhs < rhs if open_ else lhs <= rhs


@dataclass(frozen=True)
class ExtensionCoordinates:
    """
    A cone point near C(face) written in the splitting CP = H^{j+1} x C(Link(face)).

    ``link_radius`` is the distance to C(face) and ``base_radius`` the distance from the
    cone vertex to the foot point on C(face); ``link_point`` is None on C(face) itself.
    """

    face: Simplex
    theta: float
    link_radius: float
    base_radius: float
    link_point: Optional[ComplexPoint]


def extension_coordinates(p: ConePoint, face: Iterable[int], complex_: AllRightComplex) -> ExtensionCoordinates:
    """Split x = cos(theta) y + sin(theta) w with y in span(face) and w in the link."""
    face = frozenset(face)
    theta = angular_distance(p.point, face, complex_)
    r, t = polar_to_extension(p.s, theta)
    rest = [(v, x) for v, x in zip(p.point.carrier, p.point.coords) if v not in face and x > 0.0]
    link_point = ComplexPoint.from_weights([v for v, _ in rest], [x for _, x in rest]) if rest else None
    return ExtensionCoordinates(
        face=face,
        theta=theta,
        link_radius=float(r),
        base_radius=float(t),
        link_point=link_point,
    )


def link_cone_distance(p: ConePoint, face: Iterable[int], simplex: Iterable[int], complex_: AllRightComplex) -> float:
    """
    Distance from sx to C(simplex) measured in the cone over Link(face), face < simplex.

    In the splitting cosh^2(r) sigma_H + (cone over the link) the subcone C(simplex) is
    H^{j+1} x C(simplex - face), so the distance only sees the link factor.
    """
    face, simplex = frozenset(face), frozenset(simplex)
    if not face < simplex:
        raise DomainError("face", sorted(face), f"a proper face of {sorted(simplex)}")
    coords = extension_coordinates(p, face, complex_)
    if coords.link_point is None:
        return 0.0
    link = complex_.link(face)
    return cone_distance(ConePoint(coords.link_point, coords.link_radius), simplex - face, link)


@dataclass(frozen=True)
class PointCloud:
    """Cone points as dense rows over the complex's vertex columns."""

    X: np.ndarray
    s: np.ndarray
    stratum: np.ndarray

    def __len__(self) -> int:
        return len(self.s)

    def support_masks(self) -> np.ndarray:
        weights = np.left_shift(np.int64(1), np.arange(self.X.shape[1], dtype=np.int64))
        return ((self.X > 0.0).astype(np.int64) * weights).sum(axis=1)

    def take(self, index: np.ndarray) -> "PointCloud":
        return PointCloud(X=self.X[index], s=self.s[index], stratum=self.stratum[index])

    @classmethod
    def concat(cls, clouds: List["PointCloud"]) -> "PointCloud":
        return cls(
            X=np.concatenate([c.X for c in clouds]),
            s=np.concatenate([c.s for c in clouds]),
            stratum=np.concatenate([c.stratum for c in clouds]),
        )

    def point(self, i: int, complex_: AllRightComplex) -> ConePoint:
        cols = np.flatnonzero(self.X[i] > 0.0)
        carrier = tuple(complex_.vertices[c] for c in cols)
        coords = self.X[i, cols]
        return ConePoint(ComplexPoint(carrier, tuple(float(x) for x in coords)), float(self.s[i]))


GammaSampler = Callable[[int, np.ndarray, np.random.Generator], np.ndarray]


def _positive_unit(rng: np.random.Generator, count: int, size: int) -> np.ndarray:
    g = np.abs(rng.standard_normal((count, size))) + 1e-300
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def strata(complex_: AllRightComplex, max_face_dim: int) -> List[Tuple[Simplex, Optional[Simplex]]]:
    """(facet, face) pairs: every face of dimension <= max_face_dim, plus the bulk (None)."""
    out: List[Tuple[Simplex, Optional[Simplex]]] = []
    for facet in complex_.facets():
        verts = sorted(facet)
        out.append((facet, None))
        for size in range(1, min(max_face_dim + 1, len(verts) - 1) + 1):
            out.extend((facet, frozenset(f)) for f in combinations(verts, size))
    return out


def sample_points(
    complex_: AllRightComplex,
    samples: int,
    rng: np.random.Generator,
    max_face_dim: int,
    gamma: GammaSampler,
    radii: Optional[Callable[[int, np.random.Generator], np.ndarray]] = None,
    thin: float = 0.25,
) -> PointCloud:
    """
    Stratified samples near the faces of every facet.

    Samples are split evenly over the (facet, face) strata. In a face stratum x is
    tilted from a random point of the face by an angle drawn from ``gamma``; a fraction
    ``thin`` of the points is pushed onto a lower-dimensional face of the facet.
    """
    table = strata(complex_, max_face_dim)
    counts = np.full(len(table), samples // len(table))
    counts[: samples % len(table)] += 1
    idx = complex_.index
    V = len(complex_.vertices)
    rows, radii_out, labels = [], [], []
    for label, ((facet, face), count) in enumerate(zip(table, counts)):
        if count == 0:
            continue
        s = radii(count, rng) if radii is not None else np.ones(count)
        face_cols = [idx[v] for v in sorted(face)] if face else []
        rest_cols = [idx[v] for v in sorted(facet) if not face or v not in face]
        z = _positive_unit(rng, count, len(rest_cols))
        keep = rng.random((count, len(rest_cols))) < 0.6
        keep[np.arange(count), rng.integers(0, len(rest_cols), count)] = True
        thinned = rng.random(count) < thin
        z = np.where(thinned[:, None], z * keep, z)
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        X = np.zeros((count, V))
        if face:
            y = _positive_unit(rng, count, len(face_cols))
            g = gamma(len(face) - 1, s, rng)
            X[:, face_cols] = np.cos(g)[:, None] * y
            X[:, rest_cols] = np.sin(g)[:, None] * z
        else:
            X[:, rest_cols] = z
        rows.append(X)
        radii_out.append(s)
        labels.append(np.full(count, label))
    cloud = PointCloud(X=np.concatenate(rows), s=np.concatenate(radii_out), stratum=np.concatenate(labels))
    logger.debug("points sampled", complex=complex_.name, samples=len(cloud), strata=len(table))
    return cloud


def sample_sphere_points(
    complex_: AllRightComplex,
    widths: np.ndarray,
    samples: int,
    rng: np.random.Generator,
    spread: float = 1.5,
) -> PointCloud:
    """Points of P stratified within spread * widths[k] of k-faces."""
    widths = np.asarray(widths, dtype=float)

    def gamma(k: int, s: np.ndarray, g: np.random.Generator) -> np.ndarray:
        return np.minimum(g.uniform(0.0, spread * widths[k], len(s)), 0.5 * np.pi)

    return sample_points(complex_, samples, rng, len(widths) - 1, gamma)


def sample_cone_points(
    complex_: AllRightComplex,
    face_radii: np.ndarray,
    band: Tuple[float, float],
    samples: int,
    rng: np.random.Generator,
    spread: float = 1.5,
) -> PointCloud:
    """
    Cone points with s uniform in band, stratified by distance to the k-face subcones.

    ``face_radii`` has one row (inner, outer) per face dimension k. Half of a k-face
    stratum takes the distance d to C(face) uniform in [0, spread * outer], the other half
    uniform in the shell [inner - 1, outer + 1]; then sin(gamma) = sinh(d) / sinh(s).
    A one-dimensional ``face_radii`` is read as outer radii with no shell.
    """
    face_radii = np.asarray(face_radii, dtype=float)
    if face_radii.ndim == 1:
        face_radii = np.column_stack([face_radii, face_radii])

    def radii(count: int, g: np.random.Generator) -> np.ndarray:
        return g.uniform(band[0], band[1], count)

    def gamma(k: int, s: np.ndarray, g: np.random.Generator) -> np.ndarray:
        inner, outer = face_radii[k]
        wide = g.uniform(0.0, spread * outer, len(s))
        shell = g.uniform(max(inner - 1.0, 0.0), outer + 1.0, len(s))
        d = np.where(g.random(len(s)) < 0.5, wide, shell)
        with np.errstate(divide="ignore"):
            log_ratio = log_sinh(d) - log_sinh(s)
        return np.arcsin(np.minimum(np.exp(log_ratio), 1.0))

    return sample_points(complex_, samples, rng, len(face_radii) - 1, gamma, radii=radii)


def sample_shell_points(
    complex_: AllRightComplex,
    shells: np.ndarray,
    band: Tuple[float, float],
    samples: int,
    rng: np.random.Generator,
) -> PointCloud:
    """
    Cone points whose distance to a k-face subcone lies in the shell (inner_k, outer_k).

    s is uniform in band and d is uniform in (inner_k, min(outer_k, s)), so
    sin(gamma) = sinh(d) / sinh(s). Points with s <= inner_k land on the far side of
    the facet and fall outside every shell.
    """
    shells = np.asarray(shells, dtype=float)

    def radii(count: int, g: np.random.Generator) -> np.ndarray:
        return g.uniform(band[0], band[1], count)

    def gamma(k: int, s: np.ndarray, g: np.random.Generator) -> np.ndarray:
        inner, outer = shells[k]
        top = np.maximum(np.minimum(outer, s), inner)
        d = inner + (top - inner) * g.random(len(s))
        with np.errstate(divide="ignore"):
            log_ratio = log_sinh(d) - log_sinh(s)
        return np.arcsin(np.minimum(np.exp(log_ratio), 1.0))

    return sample_points(complex_, samples, rng, len(shells) - 1, gamma, radii=radii, thin=0.0)


def face_members(
    cloud: PointCloud,
    complex_: AllRightComplex,
    faces: List[Simplex],
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Star membership and log sin(gamma) of every point against every listed face.

    Returns arrays of shape (len(faces), N); log sin(gamma) is -inf on the face.
    """
    masks = cloud.support_masks()
    known = complex_.simplex_masks()
    unique, inverse = np.unique(masks, return_inverse=True)
    idx = complex_.index
    stars = np.zeros((len(faces), len(cloud)), dtype=bool)
    log_sin = np.empty((len(faces), len(cloud)))
    sq = cloud.X ** 2
    for i, face in enumerate(faces):
        face_mask = complex_.mask(face)
        table = np.array([(int(u) | face_mask) in known for u in unique])
        stars[i] = table[inverse]
        cols = np.ones(cloud.X.shape[1], dtype=bool)
        cols[[idx[v] for v in face]] = False
        with np.errstate(divide="ignore"):
            log_sin[i] = 0.5 * np.log(sq[:, cols].sum(axis=1))
    return stars, log_sin


def face_list(complex_: AllRightComplex, max_dim: int) -> List[Simplex]:
    """Simplices of dimension <= max_dim, by dimension then vertex order."""
    return [s for k in range(max_dim + 1) for s in complex_.simplices_of_dim(k)]
