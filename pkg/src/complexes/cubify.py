"""
Cubical subdivision of a simplicial complex.

An n-simplex sigma is the radial image of the faces {x_v = 1} of [0, 1]^sigma under
x -> x / sum(x). Its cubes are the intervals [I, J] of the face poset with
I <= J <= sigma nonempty: the cube {x_u = 1 on I, x_u in [0, 1] on J - I, x_u = 0 off J}
of dimension |J| - |I|. Cube vertices are the barycenters [J, J]; each n-simplex
carries the n + 1 top cubes [{v}, sigma]. Relabeling vertices relabels cubes, so the
subdivision is equivariant under the symmetric group of each simplex.
"""
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.complexes.complex import AllRightComplex, Simplex, ValidationReport, Violation, faces
from src.utils.errors import DomainError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Cube = Tuple[Simplex, Simplex]


def cube_dim(cube: Cube) -> int:
    return len(cube[1]) - len(cube[0])


def cube_faces(cube: Cube, include_self: bool = False) -> List[Cube]:
    """Subintervals [A, B] with I <= A <= B <= J."""
    low, high = cube
    free = sorted(high - low)
    out = []
    for a_size in range(len(free) + 1):
        for add_a in combinations(free, a_size):
            a = low | frozenset(add_a)
            rest = sorted(high - a)
            for b_size in range(len(rest) + 1):
                for add_b in combinations(rest, b_size):
                    out.append((a, a | frozenset(add_b)))
    if not include_self:
        out.remove(cube)
    return out


@dataclass(frozen=True)
class CubeComplex:
    """The cubes of a cubified simplicial complex, keyed by (I, J)."""

    cubes: FrozenSet[Cube]
    source: AllRightComplex

    @property
    def dim(self) -> int:
        return max((cube_dim(c) for c in self.cubes), default=-1)

    def cubes_of_dim(self, k: int) -> List[Cube]:
        return sorted((c for c in self.cubes if cube_dim(c) == k), key=lambda c: (sorted(c[0]), sorted(c[1])))

    def f_vector(self) -> List[int]:
        return [len(self.cubes_of_dim(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def top_cubes(self) -> List[Cube]:
        """Cubes that are not a proper face of another cube."""
        covered = {f for c in self.cubes for f in cube_faces(c)}
        return sorted((c for c in self.cubes if c not in covered), key=lambda c: (sorted(c[0]), sorted(c[1])))

    def ridge_counts(self) -> Dict[Cube, int]:
        """How many top cubes contain each codimension-one face."""
        counts: Counter = Counter()
        for cube in self.top_cubes():
            for face in cube_faces(cube):
                if cube_dim(face) == cube_dim(cube) - 1:
                    counts[face] += 1
        return dict(counts)

    def relabel(self, mapping: Dict[int, int]) -> FrozenSet[Cube]:
        return frozenset(
            (frozenset(mapping[v] for v in low), frozenset(mapping[v] for v in high)) for low, high in self.cubes
        )


def cubify(complex_: AllRightComplex) -> CubeComplex:
    """Every interval [I, J] of the face poset, J a simplex of the complex."""
    cubes = frozenset((low, high) for high in complex_.simplices for low in faces(high))
    result = CubeComplex(cubes=cubes, source=complex_)
    logger.debug("complex cubified", name=complex_.name, f_vector=result.f_vector())
    return result


def cube_embedding(cube: Cube, t: Sequence[float], complex_: AllRightComplex, spherical: bool = False) -> np.ndarray:
    """
    The point of the simplex J with cube coordinates t over the sorted vertices of J - I.

    Barycentric coordinates by default; ``spherical`` rescales to the unit vector of P.
    """
    low, high = cube
    free = sorted(high - low)
    t = np.asarray(t, dtype=float)
    if t.shape != (len(free),) or np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("t", t.tolist(), f"{len(free)} coordinates in [0, 1]")
    idx = complex_.index
    x = np.zeros(len(complex_.vertices))
    x[[idx[v] for v in low]] = 1.0
    if free:
        x[[idx[v] for v in free]] = t
    return x / (np.linalg.norm(x) if spherical else x.sum())


def locate(x: Iterable[float], complex_: AllRightComplex, tol: float = 1e-12) -> Tuple[Cube, np.ndarray]:
    """
    The smallest cube containing a point given by nonnegative coordinates over the vertex columns.

    I collects the maximal coordinates (within tol), J the support; cube coordinates are
    x_u / max(x) on J - I.
    """
    x = np.asarray(list(x), dtype=float)
    if np.any(x < 0.0) or not np.any(x > 0.0):
        raise DomainError("x", x.tolist(), "nonnegative and nonzero")
    top = x.max()
    verts = complex_.vertices
    high = frozenset(verts[i] for i in np.flatnonzero(x > 0.0))
    low = frozenset(verts[i] for i in np.flatnonzero(x >= top * (1.0 - tol)))
    if high not in complex_.simplices:
        raise DomainError("x", x.tolist(), f"support in a simplex of {complex_.name}")
    idx = complex_.index
    free = sorted(high - low)
    return (low, high), x[[idx[v] for v in free]] / top


def validate_cubes(cc: CubeComplex, closed: Optional[bool] = None) -> ValidationReport:
    """
    Combinatorial checks of a cubification.

    Face closure, 2^k vertices per k-cube, n + 1 top cubes per n-simplex, the Euler
    characteristic of the source, and the pseudomanifold condition on codimension-one
    faces (exactly two top cubes when ``closed``, at most two otherwise).
    """
    violations: List[Violation] = []

    def listed(cube: Cube) -> List[List[int]]:
        return [sorted(cube[0]), sorted(cube[1])]

    for cube in cc.cubes:
        for face in cube_faces(cube):
            if face not in cc.cubes:
                violations.append(Violation(rule="cube_face", simplices=listed(cube), message="missing face"))
                break
        vertices = [f for f in cube_faces(cube, include_self=True) if cube_dim(f) == 0]
        if len(vertices) != 2 ** cube_dim(cube):
            violations.append(Violation(rule="cube_vertices", simplices=listed(cube), message="not a cube"))

    for simplex in cc.source.facets():
        tops = [c for c in cc.cubes if c[1] == simplex and cube_dim(c) == len(simplex) - 1]
        if len(tops) != len(simplex):
            violations.append(Violation(
                rule="subdivision",
                simplices=[sorted(simplex)],
                message=f"{len(tops)} top cubes, expected {len(simplex)}",
            ))

    if cc.euler_characteristic() != cc.source.euler_characteristic():
        violations.append(Violation(
            rule="euler",
            message=f"chi = {cc.euler_characteristic()}, source chi = {cc.source.euler_characteristic()}",
        ))

    if closed is not None:
        for ridge, count in cc.ridge_counts().items():
            if count > 2 or (closed and count != 2):
                violations.append(Violation(
                    rule="manifold",
                    simplices=listed(ridge),
                    message=f"codimension-one face in {count} top cubes",
                ))

    report = ValidationReport(ok=not violations, dimension=cc.dim, f_vector=cc.f_vector(), violations=violations)
    logger.info("cubification validated", name=cc.source.name, ok=report.ok, f_vector=report.f_vector)
    return report
