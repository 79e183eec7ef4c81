"""
Global smoothings phi_P: P -> S^m of circles and polygon suspensions.

A circle of k' quarter arcs goes to S^1 at constant speed. A suspension of an L-gon
keeps the polar angle from its poles and spreads the L quarter-turn sectors evenly in
longitude. Sphere points are written with the polar axis first, so the extension
formulas of the cone metric around the poles apply directly.
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.complexes import AllRightComplex, ComplexPoint, link_cycle
from src.smoothing.cone_metric import Facet, facet_coordinates
from src.utils.errors import ComplexFormatError, UnsupportedDimensionError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class GlobalSmoothing:
    """
    A piecewise map of P onto the round S^m, one closed formula per facet.

    ``cycle`` lists the circle (m = 1) or the equator (m = 2) in cyclic order;
    ``poles`` is empty for circles and (north, south) for suspensions.
    """

    complex_: AllRightComplex
    cycle: Tuple[int, ...]
    poles: Tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.complex_.dim

    @property
    def sectors(self) -> int:
        return len(self.cycle)

    @property
    def stretch(self) -> float:
        """Angle on S^1 per quarter arc of P, over pi/2."""
        return 4.0 / self.sectors

    @classmethod
    def canonical(cls, complex_: AllRightComplex) -> "GlobalSmoothing":
        """
        The constant-speed map of a circle or the longitude map of a polygon suspension.

        Raises:
            UnsupportedDimensionError: If P is neither a circle nor a polygon suspension
        """
        if complex_.dim == 1:
            try:
                return cls(complex_=complex_, cycle=tuple(link_cycle(complex_)))
            except ComplexFormatError as e:
                raise UnsupportedDimensionError(1, str(e)) from e
        if complex_.dim == 2:
            return cls(complex_=complex_, **_suspension_data(complex_))
        raise UnsupportedDimensionError(complex_.dim, "no global smoothing of this complex is available")

    def _position(self, facet: Facet) -> Tuple[int, int, int]:
        """(p, v_p, v_{p+1}) for the equator edge of a facet."""
        ring = [v for v in facet if v in self.cycle]
        i, j = (self.cycle.index(v) for v in ring)
        n = self.sectors
        if (i + 1) % n == j:
            return i, self.cycle[i], self.cycle[j]
        return j, self.cycle[j], self.cycle[i]

    def frame(self, x: np.ndarray, facet: Facet) -> Tuple[np.ndarray, np.ndarray]:
        """
        Image phi(x) and the differential J mapping facet-frame vectors to the sphere.

        J annihilates the radial direction x, so J^T Q J is a form tangent at x.
        """
        facet = tuple(facet)
        col = {v: i for i, v in enumerate(facet)}
        p, a_vertex, b_vertex = self._position(facet)
        a, b = x[col[a_vertex]], x[col[b_vertex]]
        psi = math.atan2(b, a)
        longitude = 2.0 * math.pi * p / self.sectors + self.stretch * psi
        e_psi = np.zeros(len(facet))
        e_psi[col[a_vertex]] = -math.sin(psi)
        e_psi[col[b_vertex]] = math.cos(psi)

        if self.dim == 1:
            image = np.array([math.cos(longitude), math.sin(longitude)])
            tangent = np.array([-math.sin(longitude), math.cos(longitude)])
            return image, self.stretch * np.outer(tangent, e_psi)

        pole = next(v for v in facet if v in self.poles)
        c = min(max(x[col[pole]], -1.0), 1.0)
        local = math.acos(c)
        north = pole == self.poles[0]
        zeta = local if north else math.pi - local
        image = np.array([
            math.cos(zeta),
            math.sin(zeta) * math.cos(longitude),
            math.sin(zeta) * math.sin(longitude),
        ])
        e_zeta_sphere = np.array([
            -math.sin(zeta),
            math.cos(zeta) * math.cos(longitude),
            math.cos(zeta) * math.sin(longitude),
        ])
        e_long_sphere = np.array([0.0, -math.sin(longitude), math.cos(longitude)])
        e_local = np.zeros(len(facet))
        e_local[col[a_vertex]] = math.cos(local) * math.cos(psi)
        e_local[col[b_vertex]] = math.cos(local) * math.sin(psi)
        e_local[col[pole]] = -math.sin(local)
        sign = 1.0 if north else -1.0
        jac = sign * np.outer(e_zeta_sphere, e_local) + self.stretch * np.outer(e_long_sphere, e_psi)
        return image, jac

    def map_point(self, point: ComplexPoint, facet: Facet) -> np.ndarray:
        return self.frame(facet_coordinates(point, facet), facet)[0]

    def pullback(self, x: np.ndarray, facet: Facet, form: np.ndarray) -> np.ndarray:
        """phi^* Q at x for an ambient form Q given at phi(x)."""
        _, jac = self.frame(x, facet)
        return jac.T @ form @ jac

    def pullback_round(self, x: np.ndarray, facet: Facet) -> np.ndarray:
        """phi^* sigma_{S^m} at x."""
        image, jac = self.frame(x, facet)
        return jac.T @ (np.eye(len(image)) - np.outer(image, image)) @ jac


def _suspension_data(complex_: AllRightComplex) -> dict:
    graph = complex_.graph()
    order = sorted(graph.nodes, key=lambda v: (-graph.degree(v), v))
    for north in order:
        ring = complex_.link([north])
        try:
            cycle = link_cycle(ring)
        except ComplexFormatError:
            continue
        rest = [v for v in complex_.vertices if v != north and v not in cycle]
        if len(rest) != 1:
            continue
        south = rest[0]
        south_ring = set(complex_.link([south]).vertices)
        if south_ring == set(cycle) and len(complex_.facets()) == 2 * len(cycle):
            logger.debug("suspension recognised", name=complex_.name, poles=(north, south), sectors=len(cycle))
            return {"cycle": tuple(cycle), "poles": (north, south)}
    raise UnsupportedDimensionError(2, f"{complex_.name} is not a polygon suspension")
