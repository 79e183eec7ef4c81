"""Variable metrics g_s + ds^2 on a hyperbolic cone CP, evaluated facet by facet."""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from src.complexes import AllRightComplex, ComplexPoint, ConePoint
from src.utils.errors import StarMembershipError, UndefinedRegionError
from src.warping import RadialMetric

Facet = Tuple[int, ...]

# (cone point, facet frame) -> unwarped cut as an ambient form over the facet's vertices
CutEvaluator = Callable[[ConePoint, Facet], np.ndarray]


class Provenance(str, Enum):
    """Which construction produced a cone metric."""

    CANONICAL = "canonical"
    PATCHED = "patched"
    SMOOTHED = "smoothed"
    MANIFOLD_CONE = "manifold_cone"


def frame_facet(point: ComplexPoint, complex_: AllRightComplex, faces: Iterable[Iterable[int]] = ()) -> Facet:
    """
    The first facet containing the point's support and every listed face.

    Raises:
        StarMembershipError: If no facet contains them all
    """
    need = frozenset(point.support).union(*[frozenset(f) for f in faces])
    for facet in complex_.facets():
        if need <= facet:
            return tuple(sorted(facet))
    raise StarMembershipError(sorted(need), sorted(point.support))


def facet_coordinates(point: ComplexPoint, facet: Facet) -> np.ndarray:
    """The point as a unit vector over the facet's vertices (zero off the carrier)."""
    coords = dict(zip(point.carrier, point.coords))
    missing = point.support - frozenset(facet)
    if missing:
        raise StarMembershipError(list(facet), sorted(point.support))
    return np.array([coords.get(v, 0.0) for v in facet])


def round_cut(x: np.ndarray) -> np.ndarray:
    """The canonical spherical metric at x, I - x x^T."""
    return np.eye(len(x)) - np.outer(x, x)


@dataclass(frozen=True)
class FacetForm:
    """An unwarped cut written in the frame of one facet."""

    facet: Facet
    x: np.ndarray
    form: np.ndarray


@dataclass(frozen=True)
class ConeMetric:
    """
    A variable metric sinh^2(s) g_s + ds^2 on CP.

    The ray structure is that of the canonical cone: ``evaluator`` only supplies the
    unwarped cut g_s, as a form tangent to S^m at x in the coordinates of a facet. The
    radial direction is exact by representation. ``model`` is the same metric pushed to
    the round sphere by a global smoothing, when one is available.
    """

    complex_: AllRightComplex
    provenance: Provenance
    evaluator: CutEvaluator
    t_min: float = 0.0
    label: str = ""
    model: Optional[RadialMetric] = None
    framer: Optional[Callable[[ConePoint], Facet]] = None

    @property
    def dim(self) -> int:
        return self.complex_.dim

    def frame(self, p: ConePoint) -> Facet:
        """The default facet frame at p."""
        return self.framer(p) if self.framer is not None else frame_facet(p.point, self.complex_)

    def cut(self, p: ConePoint, facet: Optional[Iterable[int]] = None) -> FacetForm:
        """
        The unwarped cut at p in the frame of ``facet`` (default: ``frame(p)``).

        Raises:
            UndefinedRegionError: If p lies inside the ball the metric is undefined on
        """
        if p.s < self.t_min:
            raise UndefinedRegionError(p.s, self.t_min)
        frame = tuple(sorted(facet)) if facet is not None else self.frame(p)
        x = facet_coordinates(p.point, frame)
        return FacetForm(facet=frame, x=x, form=self.evaluator(p, frame))

    def tensor(self, p: ConePoint, facet: Optional[Iterable[int]] = None) -> np.ndarray:
        """sinh^2(s) g_s on the tangent block and ds^2 in the last slot."""
        cut = self.cut(p, facet)
        n = len(cut.x)
        out = np.zeros((n + 1, n + 1))
        out[:n, :n] = np.sinh(p.s) ** 2 * cut.form
        out[n, n] = 1.0
        return out


def canonical_metric(complex_: AllRightComplex) -> ConeMetric:
    """sigma_CP: the hyperbolic cone over the all-right complex."""
    def evaluator(p: ConePoint, facet: Facet) -> np.ndarray:
        return round_cut(facet_coordinates(p.point, facet))

    return ConeMetric(
        complex_=complex_,
        provenance=Provenance.CANONICAL,
        evaluator=evaluator,
        label=f"sigma_C({complex_.name})",
    )
