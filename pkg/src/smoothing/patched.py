"""
The patched metric of a hyperbolic cone CP.

On Y(face) the metric is the hyperbolic extension E_{C face} of the smoothed metric of
Link(face); on Y_top it is sigma_CP. Every evaluation happens in the frame of one facet
F: the facet is reordered as (face, F - face), the extension formula is applied with the
face coordinates as axis, and the result is permuted back.
"""
import time
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from src.complexes import (
    AllRightComplex,
    ComplexPoint,
    ConePoint,
    PatchKind,
    PatchLabel,
    PatchSystem,
    classify_patch,
)
from src.config import settings
from src.metricfield import FiberAtlas
from src.models import CheckResult, SmoothingParams
from src.smoothing.cone_metric import (
    ConeMetric,
    Facet,
    Provenance,
    facet_coordinates,
    frame_facet,
    round_cut,
)
from src.utils.errors import StarMembershipError, UndefinedRegionError
from src.utils.logger import setup_logger
from src.warping import RadialMetric, hyperbolic_extension
from src.widths import RadiusSchedule

logger = setup_logger(__name__)

LinkSmoother = Callable[[AllRightComplex, SmoothingParams], ConeMetric]


def _link_base(link_metric: ConeMetric, link_facet: Facet) -> RadialMetric:
    """The link metric on one link facet, as a radial metric over the round sphere of that facet."""
    def unwarped(U: np.ndarray, R: np.ndarray) -> np.ndarray:
        U = np.asarray(U, dtype=float)
        R = np.broadcast_to(np.asarray(R, dtype=float), U.shape[:-1])
        out = np.empty(U.shape + (U.shape[-1],))
        for idx in np.ndindex(*R.shape):
            point = ComplexPoint.from_weights(link_facet, np.clip(U[idx], 0.0, None))
            out[idx] = link_metric.cut(ConePoint(point, float(R[idx])), link_facet).form
        return out

    return RadialMetric(
        atlas=FiberAtlas.sphere(len(link_facet) - 1),
        unwarped=unwarped,
        t_min=link_metric.t_min,
        label=f"{link_metric.label}|{list(link_facet)}",
    )


class PatchedEvaluator:
    """Evaluates every patch path at a cone point; extensions are cached per (face, link facet)."""

    def __init__(self, system: PatchSystem, params: SmoothingParams, link_smoother: LinkSmoother):
        self.system = system
        self.complex = system.complex
        self.params = params
        self.link_smoother = link_smoother
        self._links: Dict[FrozenSet[int], ConeMetric] = {}
        self._extensions: Dict[Tuple[FrozenSet[int], Facet], RadialMetric] = {}

    def link_metric(self, face: FrozenSet[int]) -> ConeMetric:
        if face not in self._links:
            self._links[face] = self.link_smoother(self.complex.link(face), self.params)
        return self._links[face]

    def extension(self, face: FrozenSet[int], link_facet: Facet) -> RadialMetric:
        key = (face, link_facet)
        if key not in self._extensions:
            base = _link_base(self.link_metric(face), link_facet)
            self._extensions[key] = hyperbolic_extension(base, len(face))
        return self._extensions[key]

    def labels(self, p: ConePoint) -> List[PatchLabel]:
        """Y labels of p, lowest-dimensional face first, Y_top last."""
        labels = classify_patch(p, self.system)
        if not labels or any(label.kind == PatchKind.BALL for label in labels):
            raise UndefinedRegionError(p.s, self.system.inner)
        ys = [label for label in labels if label.kind in (PatchKind.Y, PatchKind.Y_TOP)]
        return sorted(ys, key=lambda label: (label.simplex is None, len(label.simplex or ()), sorted(label.simplex or ())))

    def path(self, label: PatchLabel, p: ConePoint, facet: Facet) -> np.ndarray:
        """The unwarped cut at p along one patch definition, in the frame of ``facet``."""
        if label.kind == PatchKind.Y_TOP:
            return round_cut(facet_coordinates(p.point, facet))
        face = frozenset(label.simplex)
        link_facet = tuple(sorted(set(facet) - face))
        order = tuple(sorted(face)) + link_facet
        x = facet_coordinates(p.point, order)
        form = self.extension(face, link_facet).unwarped(x[None, :], np.array([p.s]))[0]
        back = [order.index(v) for v in facet]
        return form[np.ix_(back, back)]

    def frame(self, p: ConePoint) -> Facet:
        """The first facet holding p and the faces of all its Y patches."""
        return frame_facet(p.point, self.complex, [label.simplex for label in self.labels(p) if label.simplex])

    def __call__(self, p: ConePoint, facet: Facet) -> np.ndarray:
        labels = self.labels(p)
        face = labels[0].simplex
        if face is not None and not face <= frozenset(facet):
            raise StarMembershipError(list(facet), sorted(face))
        return self.path(labels[0], p, facet)


def patched_metric(
    complex_: AllRightComplex,
    schedule: RadiusSchedule,
    params: SmoothingParams,
    link_smoother: Optional[LinkSmoother] = None,
) -> ConeMetric:
    """
    The patched metric on CP - B_{r_{m-2} - (2 + xi)}.

    Args:
        complex_: Validated all-right complex of dimension m = schedule.m
        schedule: Radius schedule fixing the patches
        params: Smoothing data used for the link metrics
        link_smoother: Builds the smoothed metric of a link (the recursive construction by default)

    Raises:
        ParameterError: If the schedule dimension differs from the complex dimension
        UnsupportedDimensionError: On evaluation, when a needed link has no smoothing
        UndefinedRegionError: On evaluation inside the removed ball
    """
    if link_smoother is None:
        from src.smoothing.smoothed import smoothed_metric as link_smoother
    system = PatchSystem(complex_, schedule)
    evaluator = PatchedEvaluator(system, params, link_smoother)
    return ConeMetric(
        complex_=complex_,
        provenance=Provenance.PATCHED,
        evaluator=evaluator,
        t_min=system.inner,
        framer=evaluator.frame,
        label=f"P({complex_.name},r={params.r:g})",
    )


def overlap_panel(
    metric: ConeMetric,
    samples: int,
    rng: np.random.Generator,
    tol: Optional[float] = None,
) -> Tuple[List[CheckResult], List[dict]]:
    """
    Compare every patch definition on sampled overlaps of Y patches.

    Overlap points are drawn in the r_{m,k} to s_{m,k} shells until ``samples`` of them
    are collected.

    Returns:
        (checks, rows) with one row per overlap point
    """
    tol = settings.overlap_tol if tol is None else tol
    evaluator: PatchedEvaluator = metric.evaluator  # type: ignore[assignment]
    system = evaluator.system
    start = time.time()
    cloud, drawn = system.sample_overlaps(samples, rng)

    rows: List[dict] = []
    worst = 0.0
    for j in range(len(cloud)):
        p = cloud.point(j, system.complex)
        labels = evaluator.labels(p)
        facet = evaluator.frame(p)
        forms = [evaluator.path(label, p, facet) for label in labels]
        gap = max(float(np.max(np.abs(f - forms[0]))) for f in forms[1:])
        worst = max(worst, gap)
        rows.append({"s": p.s, "labels": " ".join(str(label) for label in labels), "gap": gap})

    logger.info(
        "overlap sweep finished",
        complex=system.complex.name,
        requested=samples,
        drawn=drawn,
        overlaps=len(rows),
        worst=worst,
        elapsed=round(time.time() - start, 3),
    )
    checks = [
        CheckResult.below(
            "overlap_agreement", worst, tol, "max |P_Y(face) - P_other| on overlaps", overlaps=len(rows), drawn=drawn
        ),
        CheckResult.at_least(
            "overlaps_sampled",
            len(rows),
            samples,
            "overlap points >= requested",
            overlaps=len(rows),
            requested=samples,
            drawn=drawn,
        ),
    ]
    return checks, rows
