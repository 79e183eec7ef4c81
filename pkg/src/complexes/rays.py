"""
Radial rays R_{x,b}(s) = (x, s + b) against neighborhoods of subcones.

A ray point at parameter s lies in the neighborhood of C(simplex) whose width a(s) has
sinh a(s) = sin(alpha) sinh(s) iff sin(gamma) sinh(s + b) <= sin(alpha) sinh(s). The ratio
sinh(s + b) / sinh(s) tends to e^b, so e^b sin(gamma) against sin(alpha) decides the tail.
"""
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.complexes.complex import AllRightComplex
from src.complexes.cone import ComplexPoint, PointCloud, face_list, in_star, orthogonal_norm, sample_sphere_points
from src.complexes.patches import PatchKind, PatchLabel, PatchSystem
from src.hyptrig import log_sinh
from src.models.report import CheckResult
from src.utils.errors import DomainError
from src.utils.logger import setup_logger
from src.widths import RadiusSchedule

logger = setup_logger(__name__)

RADII = (10.0, 20.0, 40.0, 80.0)


class RayKind(str, Enum):
    EVENTUALLY = "Eventually"
    STABLY_DISJOINT = "StablyDisjoint"
    UNSTABLY_DISJOINT = "UnstablyDisjoint"


@dataclass(frozen=True)
class RayVerdict:
    """
    Tail behaviour of a ray.

    ``threshold`` is s0 (member for all s >= s0) for EVENTUALLY and the exit
    parameter (disjoint for all s > threshold) for STABLY_DISJOINT.
    """

    kind: RayKind
    threshold: float


def _log_sin_gamma(x: ComplexPoint, simplex: Iterable[int]) -> float:
    norm = orthogonal_norm(x, simplex)
    return math.log(norm) if norm > 0.0 else -math.inf


def ray_member(
    x: ComplexPoint,
    b: float,
    simplex: Iterable[int],
    alpha: float,
    s: float,
    complex_: AllRightComplex,
) -> bool:
    """Direct membership of R_{x,b}(s) in the closed width-a(s) neighborhood of C(simplex)."""
    if s + b < 0.0:
        raise DomainError("s + b", s + b, "[0, inf)")
    simplex = frozenset(simplex)
    if not in_star(x.support, simplex, complex_):
        return False
    lsg = _log_sin_gamma(x, simplex)
    if lsg == -math.inf or s + b == 0.0:
        return True
    return lsg + float(log_sinh(s + b)) <= math.log(math.sin(alpha)) + float(log_sinh(s))


def trichotomy(log_sin_gamma: float, b: float, log_sin_alpha: float) -> RayVerdict:
    """Classify a ray from log sin(gamma), the offset b and log sin(alpha)."""
    entry = max(0.0, -b)
    if log_sin_gamma == -math.inf:
        return RayVerdict(RayKind.EVENTUALLY, entry)
    tail = b + log_sin_gamma - log_sin_alpha
    if tail == 0.0:
        return RayVerdict(RayKind.UNSTABLY_DISJOINT, math.inf)
    q = math.exp(log_sin_alpha - log_sin_gamma)
    if tail < 0.0:
        if b <= 0.0:
            return RayVerdict(RayKind.EVENTUALLY, entry)
        w = (q - math.cosh(b)) / math.sinh(b)
        return RayVerdict(RayKind.EVENTUALLY, math.atanh(1.0 / w))
    if b >= 0.0:
        return RayVerdict(RayKind.STABLY_DISJOINT, 0.0)
    w = (math.cosh(b) - q) / abs(math.sinh(b))
    return RayVerdict(RayKind.STABLY_DISJOINT, math.atanh(1.0 / w))


def ray_classify(
    x: ComplexPoint,
    b: float,
    simplex: Iterable[int],
    alpha: float,
    complex_: AllRightComplex,
) -> RayVerdict:
    """
    Eventually / StablyDisjoint / UnstablyDisjoint for the neighborhood of angular width alpha.

    Rays off the closed star never meet the neighborhood.
    """
    simplex = frozenset(simplex)
    if not in_star(x.support, simplex, complex_):
        return RayVerdict(RayKind.STABLY_DISJOINT, 0.0)
    return trichotomy(_log_sin_gamma(x, simplex), b, math.log(math.sin(alpha)))


def _in_closed_tail(verdict: RayVerdict, b: float) -> bool:
    # on the boundary the ratio stays below e^b exactly when b <= 0
    return verdict.kind == RayKind.EVENTUALLY or (verdict.kind == RayKind.UNSTABLY_DISJOINT and b <= 0.0)


def ray_absorption(
    x: ComplexPoint,
    b: float,
    schedule: RadiusSchedule,
    complex_: AllRightComplex,
) -> Tuple[PatchLabel, float]:
    """
    The patch holding R_{x,b}(r_{m-2}) for every r_{m-2} > r'.

    With S = r_{m-2} the closed r_{m,k} neighborhood has sin(alpha) = varsigma^{k+1}
    and the open s_{m,k} neighborhood has sin(beta) = c varsigma^{k+1}. The label is
    Y of a smallest-dimensional face whose r-neighborhood eventually holds the ray,
    or Y_top when every such neighborhood is eventually left. Offsets
    b <= -(2 + xi) keep the ray in the central ball for all S.

    Returns:
        (label, r'); r' is inf when a boundary case leaves no stable label
    """
    if b <= -(2.0 + schedule.xi):
        return PatchLabel(PatchKind.BALL), 0.0
    faces = [f for f in face_list(complex_, schedule.m - 2) if in_star(x.support, f, complex_)]
    closed, exits = {}, {}
    for face in faces:
        k = len(face) - 1
        verdict = trichotomy(_log_sin_gamma(x, face), b, schedule.alpha.log_sine(k))
        closed[face] = _in_closed_tail(verdict, b)
        exits[face] = verdict.threshold if verdict.kind == RayKind.STABLY_DISJOINT else math.inf

    for k in range(schedule.m - 1):
        hits = [f for f in faces if len(f) == k + 1 and closed[f]]
        if not hits:
            continue
        face = min(hits, key=sorted)
        entry = trichotomy(_log_sin_gamma(x, face), b, schedule.beta.log_sine(k))
        lower = [exits[f] for f in faces if len(f) <= k]
        return PatchLabel(PatchKind.Y, face), max([entry.threshold] + lower)
    return PatchLabel(PatchKind.Y_TOP), max([0.0] + list(exits.values()))


def perturb(x: ComplexPoint, b: float, complex_: AllRightComplex, radius: float, rng: np.random.Generator) -> Tuple[ComplexPoint, float]:
    """A nearby ray: coordinates moved within a facet containing the carrier, b shifted."""
    support = x.support
    options = [f for f in complex_.facets() if support <= f]
    facet = sorted(options[int(rng.integers(len(options)))])
    coords = dict(zip(x.carrier, x.coords))
    weights = np.array([coords.get(v, 0.0) for v in facet])
    weights = np.abs(weights + rng.uniform(-radius, radius, len(weights)))
    return ComplexPoint.from_weights(facet, weights), b + float(rng.uniform(-radius, radius))


def absorption_is_stable(
    x: ComplexPoint,
    b: float,
    schedule: RadiusSchedule,
    complex_: AllRightComplex,
    rng: np.random.Generator,
    radius: float = 1e-3,
    trials: int = 20,
) -> bool:
    """Whether random perturbations of (x, b) within radius keep the absorbing label."""
    label, _ = ray_absorption(x, b, schedule, complex_)
    for _ in range(trials):
        x2, b2 = perturb(x, b, complex_, radius, rng)
        if ray_absorption(x2, b2, schedule, complex_)[0] != label:
            return False
    return True


def absorption_panel(
    complex_: AllRightComplex,
    rays: int,
    rng: np.random.Generator,
    varsigma: float,
    c: float,
    xi: float,
    radii: Sequence[float] = RADII,
    offsets: Optional[Tuple[float, float]] = None,
) -> List[CheckResult]:
    """
    Absorption labels against direct patch membership at several r_{m-2}.

    For every ray and radius S > r' the predicted label must be among the labels
    the patch system assigns to (x, S + b).
    """
    start = time.perf_counter()
    m = complex_.dim
    low, high = offsets or (-(3.0 + xi), 3.0)
    widest = RadiusSchedule.from_top(max(radii), m, varsigma, c, xi)
    directions = sample_sphere_points(complex_, widest.beta.angles(m), rays, rng)
    b = rng.uniform(low, high, len(directions))
    points = [directions.point(i, complex_).point for i in range(len(directions))]
    predicted = [ray_absorption(p, float(bi), widest, complex_) for p, bi in zip(points, b)]

    checked = 0
    mismatched = 0
    for S in radii:
        system = PatchSystem(complex_, RadiusSchedule.from_top(S, m, varsigma, c, xi))
        top = system.outer
        cloud = PointCloud(X=directions.X, s=np.maximum(top + b, 0.0), stratum=directions.stratum)
        result = system.membership(cloud)
        index = {label: i for i, label in enumerate(result.labels)}
        for j, (label, threshold) in enumerate(predicted):
            if not top > threshold:
                continue
            checked += 1
            if not result.members[index[label], j]:
                mismatched += 1
                logger.debug("absorption mismatch", ray=j, label=str(label), radius=S, threshold=threshold)

    kinds = {kind.value: sum(1 for label, _ in predicted if label.kind == kind) for kind in PatchKind}
    details = dict(rays=len(points), radii=list(radii), checked=checked, labels=kinds)
    logger.info(
        "absorption panel evaluated",
        complex=complex_.name,
        checked=checked,
        mismatched=mismatched,
        elapsed=round(time.perf_counter() - start, 3),
    )
    return [
        CheckResult.below("absorption_mismatch", mismatched, 0, "R_{x,b}(S) in predicted patch for S > r'", **details),
    ]
