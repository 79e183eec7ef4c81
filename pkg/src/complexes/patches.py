"""
The Y and X patch systems of a hyperbolic cone CP.

For a k-simplex (k <= m - 2):
    Y(k-simplex) = open N_{s_{m,k}}(C simplex) - (closed N_{r_{m,j}} of every j-simplex, j < k)
                   - B_{r_{m-2} - (2 + xi)}
    Y_top        = CP - (closed N_{r_{m,j}} of every j-simplex, j <= m - 2) - B_{r_{m-2} - (2 + xi)}
and X(...) = Y(...) - B_{r_{m-2}}. Neighborhoods of C(simplex) are evaluated in the
closed star of the simplex, where sinh(dist) = sin(gamma) sinh(s).
"""
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.complexes.complex import AllRightComplex, Simplex
from src.complexes.cone import (
    ConePoint,
    PointCloud,
    face_list,
    face_members,
    sample_cone_points,
    sample_shell_points,
    sample_sphere_points,
)
from src.hyptrig import log_sinh
from src.models.report import CheckResult
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger
from src.widths import RadiusSchedule, WidthSet

logger = setup_logger(__name__)


class PatchKind(str, Enum):
    """Patch variants."""

    Y = "Y"
    Y_TOP = "Y_top"
    X = "X"
    X_TOP = "X_top"
    BALL = "Ball"


@dataclass(frozen=True)
class PatchLabel:
    kind: PatchKind
    simplex: Optional[Simplex] = None

    def __str__(self) -> str:
        if self.simplex is None:
            return self.kind.value
        return f"{self.kind.value}({','.join(str(v) for v in sorted(self.simplex))})"


@dataclass
class PatchMembership:
    """Label matrix of a point cloud: members[i, j] says point j carries labels[i]."""

    labels: List[PatchLabel]
    members: np.ndarray

    def rows(self, kind: PatchKind) -> np.ndarray:
        return np.array([i for i, label in enumerate(self.labels) if label.kind == kind], dtype=int)

    def labels_of(self, j: int) -> List[PatchLabel]:
        return [label for label, hit in zip(self.labels, self.members[:, j]) if hit]


class PatchSystem:
    """Vectorized membership in the patches of CP for one radius schedule."""

    def __init__(self, complex_: AllRightComplex, schedule: RadiusSchedule):
        if schedule.m != complex_.dim:
            raise ParameterError("schedule.m", schedule.m, f"the complex dimension {complex_.dim}")
        self.complex = complex_
        self.schedule = schedule
        self.m = schedule.m
        self.faces = face_list(complex_, self.m - 2)
        self.dims = np.array([len(f) - 1 for f in self.faces])
        self.log_sinh_r = np.array([schedule.log_sinh_r_mk(k) for k in range(self.m - 1)])
        self.log_sinh_s = np.array([schedule.log_sinh_s(k) for k in range(self.m - 1)])
        self.inner = schedule.inner_radius
        self.outer = schedule.r_k(self.m - 2)

    def labels(self) -> List[PatchLabel]:
        out = [PatchLabel(PatchKind.BALL)]
        out += [PatchLabel(PatchKind.Y, f) for f in self.faces] + [PatchLabel(PatchKind.Y_TOP)]
        out += [PatchLabel(PatchKind.X, f) for f in self.faces] + [PatchLabel(PatchKind.X_TOP)]
        return out

    def neighborhoods(self, cloud: PointCloud) -> Dict[str, np.ndarray]:
        """Closed r_{m,k} and open s_{m,k} neighborhood membership, one row per face."""
        stars, log_sin = face_members(cloud, self.complex, self.faces)
        lhs = log_sin + log_sinh(cloud.s)[None, :]
        closed = stars & (lhs <= self.log_sinh_r[self.dims][:, None])
        open_ = stars & (lhs < self.log_sinh_s[self.dims][:, None])
        return {"closed": closed, "open": open_, "closed_s": stars & (lhs <= self.log_sinh_s[self.dims][:, None])}

    def membership(self, cloud: PointCloud) -> PatchMembership:
        nb = self.neighborhoods(cloud)
        closed, open_ = nb["closed"], nb["open"]
        N = len(cloud)
        below = np.zeros((self.m, N), dtype=bool)
        for k in range(1, self.m):
            below[k] = below[k - 1] | closed[self.dims == k - 1].any(axis=0)
        outside_inner = cloud.s > self.inner
        outside_outer = cloud.s > self.outer
        y = open_ & ~below[self.dims] & outside_inner[None, :]
        y_top = ~below[self.m - 1] & outside_inner
        members = np.vstack([
            ~outside_inner[None, :],
            y,
            y_top[None, :],
            y & outside_outer[None, :],
            (y_top & outside_outer)[None, :],
        ])
        return PatchMembership(labels=self.labels(), members=members)

    def shells(self) -> np.ndarray:
        """(r_{m,k}, s_{m,k}) per face dimension k."""
        return np.column_stack([
            [self.schedule.r_mk(k) for k in range(self.m - 1)],
            [self.schedule.s(k) for k in range(self.m - 1)],
        ])

    def sample(self, samples: int, rng: np.random.Generator, band: Optional[tuple] = None) -> PointCloud:
        """Stratified cone points in a radial band around the patch region."""
        band = band or (self.inner - 1.0, self.outer + 3.0)
        return sample_cone_points(self.complex, self.shells(), band, samples, rng)

    def overlap_mask(self, cloud: PointCloud) -> np.ndarray:
        """Points lying in two or more Y patches (Y_top included)."""
        membership = self.membership(cloud)
        y_rows = np.concatenate([membership.rows(PatchKind.Y), membership.rows(PatchKind.Y_TOP)])
        return membership.members[y_rows].sum(axis=0) >= 2

    def sample_overlaps(
        self,
        samples: int,
        rng: np.random.Generator,
        max_draws: Optional[int] = None,
    ) -> Tuple[PointCloud, int]:
        """
        Draw shell points until ``samples`` of them lie on overlaps of Y patches.

        Returns:
            (cloud of exactly ``samples`` overlap points, number of points drawn); the
            cloud is shorter only when ``max_draws`` (default 200 * samples) runs out
        """
        if samples < 1:
            raise ParameterError("samples", samples, "samples >= 1")
        max_draws = max_draws or 200 * samples
        band = (self.inner, self.outer + 3.0)
        shells = self.shells()
        found: List[PointCloud] = []
        count = drawn = 0
        while count < samples and drawn < max_draws:
            batch = min(max(2 * (samples - count), 64), max_draws - drawn)
            cloud = sample_shell_points(self.complex, shells, band, batch, rng)
            drawn += len(cloud)
            hits = cloud.take(np.flatnonzero(self.overlap_mask(cloud)))
            found.append(hits)
            count += len(hits)
        cloud = PointCloud.concat(found).take(np.arange(min(count, samples)))
        logger.debug("overlap points sampled", complex=self.complex.name, overlaps=len(cloud), drawn=drawn)
        return cloud, drawn


def classify_patch(p: ConePoint, system: PatchSystem) -> List[PatchLabel]:
    """All patch labels containing the cone point."""
    X = p.point.dense(system.complex)[None, :]
    cloud = PointCloud(X=X, s=np.array([p.s]), stratum=np.zeros(1, dtype=int))
    return system.membership(cloud).labels_of(0)


def patch_panel(system: PatchSystem, samples: int, rng: np.random.Generator) -> List[CheckResult]:
    """
    Sampled checks of the patch system.

    Covering outside the ball, pairwise disjointness of non-nested Y patches,
    containment of Y(simplex) in the open star, the ball and lower-skeleton exclusions,
    disjointness of the s-neighborhoods of disjoint simplices outside the ball, and
    X patches inside Y patches beyond r_{m-2}.
    """
    start = time.perf_counter()
    cloud = system.sample(samples, rng)
    result = system.membership(cloud)
    nb = system.neighborhoods(cloud)
    members = result.members
    y_rows = result.rows(PatchKind.Y)
    x_rows = result.rows(PatchKind.X)
    top = result.rows(PatchKind.Y_TOP)[0]
    outside = cloud.s > system.inner
    masks = cloud.support_masks()

    covered = members[np.concatenate([y_rows, [top]])][:, outside].any(axis=0)
    coverage = float(covered.mean()) if covered.size else 1.0

    crossing = 0
    for a, b in combinations(range(len(system.faces)), 2):
        fa, fb = system.faces[a], system.faces[b]
        if fa <= fb or fb <= fa:
            continue
        crossing += int(np.count_nonzero(members[y_rows[a]] & members[y_rows[b]]))

    open_star = 0
    lower = 0
    for i, face in enumerate(system.faces):
        hit = members[y_rows[i]]
        face_mask = system.complex.mask(face)
        open_star += int(np.count_nonzero(hit & ((masks & face_mask) != face_mask)))
        lower_rows = system.dims < system.dims[i]
        lower += int(np.count_nonzero(hit & nb["closed"][lower_rows].any(axis=0)))

    in_ball = int(np.count_nonzero(members[np.concatenate([y_rows, [top]])][:, ~outside]))

    s_overlap = 0
    for a, b in combinations(range(len(system.faces)), 2):
        if system.faces[a] & system.faces[b]:
            continue
        s_overlap += int(np.count_nonzero(nb["closed_s"][a] & nb["closed_s"][b] & outside))

    x_escape = int(np.count_nonzero(members[x_rows] & ~members[y_rows]))
    x_escape += int(np.count_nonzero(members[x_rows] & (cloud.s <= system.outer)[None, :]))

    details = dict(samples=len(cloud), m=system.m, r=system.schedule.r, inner=system.inner)
    checks = [
        CheckResult.below("patch_coverage_gap", 1.0 - coverage, 0.0, "C P - B = Y_top u U Y(simplex)", **details),
        CheckResult.below("patch_crossing", crossing, 0, "non-nested Y patches are disjoint", **details),
        CheckResult.below("patch_open_star", open_star, 0, "Y(simplex) in the open star", **details),
        CheckResult.below("patch_lower_skeleton", lower, 0, "Y(k-simplex) misses N_{r_{m,j}}, j < k", **details),
        CheckResult.below("patch_ball", in_ball, 0, "Y misses B_{r_{m-2}-(2+xi)}", **details),
        CheckResult.below("patch_s_disjoint", s_overlap, 0, "disjoint simplices: N_{s_{m,j}} n N_{s_{m,k}} empty", **details),
        CheckResult.below("patch_x_inside_y", x_escape, 0, "X = Y - B_{r_{m-2}}", **details),
    ]
    logger.info(
        "patch panel evaluated",
        complex=system.complex.name,
        samples=len(cloud),
        coverage=coverage,
        crossing=crossing,
        elapsed=round(time.perf_counter() - start, 3),
    )
    return checks


def dnp_panel(
    complex_: AllRightComplex,
    b: WidthSet,
    a: WidthSet,
    samples: int,
    rng: np.random.Generator,
) -> List[CheckResult]:
    """
    Sampled disjoint neighborhood checks on P for the width pair (B, A).

    A point in the beta_k and beta_l neighborhoods of non-nested simplices of
    dimensions k <= l must lie in the alpha_i neighborhood of some i-simplex, i < k.
    Distinct simplices of equal dimension are the plain DNP case and are counted apart.
    """
    m = complex_.dim
    cloud = sample_sphere_points(complex_, b.angles(m), samples, rng)
    faces = face_list(complex_, m - 1)
    dims = np.array([len(f) - 1 for f in faces])
    stars, log_sin = face_members(cloud, complex_, faces)
    in_b = stars & (log_sin <= np.array([b.log_sine(k) for k in dims])[:, None])
    in_a = stars & (log_sin <= np.array([a.log_sine(k) for k in dims])[:, None])
    below = np.zeros((m + 1, len(cloud)), dtype=bool)
    for k in range(1, m + 1):
        below[k] = below[k - 1] | in_a[dims == k - 1].any(axis=0)

    same_dim = 0
    mixed = 0
    crowded = np.flatnonzero(in_b.sum(axis=0) >= 2)
    for j in crowded:
        hits = np.flatnonzero(in_b[:, j])
        for p, q in combinations(hits, 2):
            fp, fq = faces[p], faces[q]
            if fp <= fq or fq <= fp:
                continue
            k = min(dims[p], dims[q])
            if not below[k, j]:
                if dims[p] == dims[q]:
                    same_dim += 1
                else:
                    mixed += 1

    details = dict(samples=len(cloud), varsigma=b.varsigma, c=b.c, c_prime=a.c, complex=complex_.name)
    logger.info("dnp panel evaluated", crowded=len(crowded), same_dim=same_dim, mixed=mixed, **details)
    return [
        CheckResult.below("dnp_same_dimension", same_dim, 0, "N_{beta_k} pairs inside U_{j<k} N_{alpha_j}", **details),
        CheckResult.below("dnp_mixed_dimension", mixed, 0, "N_{beta_k} n N_{beta_l} inside U_{i<k} N_{alpha_i}", **details),
    ]
