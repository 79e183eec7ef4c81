"""Radius schedule of the cone patches and the slice angles it induces."""
import math
from typing import Dict, List, Tuple

import numpy as np

from src.hyptrig import asinh_exp, log_sinh
from src.models.report import CheckResult
from src.utils.errors import DomainError, ParameterError
from src.utils.logger import setup_logger
from src.widths.width_set import HALF_SQRT2, WidthSet, dnp_check

logger = setup_logger(__name__)


class RadiusSchedule:
    """
    The radii r_k, s_{m,k} and r_{m,k} for base radius r and complex dimension m.

    With A = B(varsigma) and B = B(varsigma; c):
        r_k = asinh(sinh r / sin alpha_k), r_{-1} = r,
        s_{m,k} = asinh(sinh(r_{m-2}) sin beta_k),
        r_{m,k} = r_{m-k-3},
    for 0 <= k <= m - 2. All radii are formed from ln sinh r plus an integer multiple of
    ln varsigma, so they stay finite far past the float range of sinh.
    """

    def __init__(self, r: float, m: int, varsigma: float, c: float, xi: float):
        if m < 2:
            raise ParameterError("m", m, "m >= 2")
        if not xi > 0.0:
            raise ParameterError("xi", xi, "xi > 0")
        if not r > 4.0 + xi:
            raise ParameterError("r", r, f"r > 4 + xi = {4.0 + xi:g}")
        if not c > 1.0:
            raise ParameterError("c", c, "c > 1")
        if not c * varsigma < math.exp(-(4.0 + xi)):
            raise ParameterError("c * varsigma", c * varsigma, f"< e^-(4+xi) = {math.exp(-(4.0 + xi)):.3e}")
        self.r = float(r)
        self.m = m
        self.xi = float(xi)
        self.alpha = WidthSet.natural(varsigma)
        self.beta = WidthSet(varsigma=varsigma, c=c)
        self._log_sinh_r = float(log_sinh(r))
        self._log_varsigma = math.log(varsigma)

    @classmethod
    def from_top(cls, top: float, m: int, varsigma: float, c: float, xi: float) -> "RadiusSchedule":
        """The schedule whose r_{m-2} equals top."""
        r = float(asinh_exp(log_sinh(top) + (m - 1) * math.log(varsigma)))
        return cls(r, m, varsigma, c, xi)

    @property
    def varsigma(self) -> float:
        return self.alpha.varsigma

    @property
    def c(self) -> float:
        return self.beta.c

    def _radius(self, log_value: float) -> float:
        return float(asinh_exp(log_value))

    def log_sinh_r_k(self, k: int) -> float:
        """ln sinh r_k = ln sinh r - (k+1) ln varsigma."""
        if k < -1:
            raise DomainError("k", k, "k >= -1")
        if k >= 0:
            self.alpha.check_index(k)
        return self._log_sinh_r - (k + 1) * self._log_varsigma

    def r_k(self, k: int) -> float:
        """asinh(sinh r / varsigma^{k+1}); r_{-1} = r."""
        log_value = self.log_sinh_r_k(k)
        return self.r if k == -1 else self._radius(log_value)

    def _check_k(self, k: int) -> None:
        if not 0 <= k <= self.m - 2:
            raise DomainError("k", k, f"[0, {self.m - 2}]")

    def log_sinh_s(self, k: int) -> float:
        """ln sinh s_{m,k} = ln sinh r + ln c - (m - k - 2) ln varsigma."""
        self._check_k(k)
        return self._log_sinh_r + math.log(self.c) - (self.m - k - 2) * self._log_varsigma

    def s(self, k: int) -> float:
        return self._radius(self.log_sinh_s(k))

    def r_mk(self, k: int) -> float:
        """r_{m,k} = r_{m-k-3}."""
        self._check_k(k)
        return self.r_k(self.m - k - 3)

    def log_sinh_r_mk(self, k: int) -> float:
        self._check_k(k)
        return self.log_sinh_r_k(self.m - k - 3)

    @property
    def inner_radius(self) -> float:
        """r_{m-2} - (2 + xi), the radius of the ball removed from every Y patch."""
        return self.r_k(self.m - 2) - (2.0 + self.xi)

    def slice_scale(self, t: float) -> float:
        """c'' = sinh(r_{m-2}) / sinh(t).

        Raises:
            DomainError: If t < r_{m-2} - (2 + xi)
        """
        if t < self.inner_radius:
            raise DomainError("t", t, f"[{self.inner_radius:g}, inf)")
        log_sinh_top = self._log_sinh_r - (self.m - 1) * self._log_varsigma
        return math.exp(log_sinh_top - float(log_sinh(t)))

    def slice_angles(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Angles (theta_{m,k}(t), phi_{m,k}(t)) for k <= m - 2.

        The slices of the r_{m,k} and s_{m,k} neighborhoods of a cone over a simplex by
        the sphere of radius t are the theta and phi neighborhoods of the simplex, with
        sin theta = c'' sin alpha_k and sin phi = c'' sin beta_k.
        """
        scale = self.slice_scale(t)
        count = self.m - 1
        theta = np.arcsin(scale * self.alpha.sines(count))
        phi = np.arcsin(scale * self.beta.sines(count))
        return theta, phi

    def slice_widths(self, t: float) -> Tuple[WidthSet, WidthSet]:
        """The slice angles as the width sets (B(varsigma, c c''), B(varsigma, c''))."""
        scale = self.slice_scale(t)
        return (
            WidthSet(varsigma=self.varsigma, c=self.c * scale),
            WidthSet(varsigma=self.varsigma, c=scale),
        )

    def as_dict(self) -> Dict[str, object]:
        ks = range(self.m - 1)
        return {
            "r": self.r,
            "m": self.m,
            "varsigma": self.varsigma,
            "c": self.c,
            "xi": self.xi,
            "r_k": [self.r_k(k) for k in range(-1, self.m - 1)],
            "s_mk": [self.s(k) for k in ks],
            "r_mk": [self.r_mk(k) for k in ks],
        }


def radius_schedule(r: float, m: int, varsigma: float, c: float, xi: float = 0.5) -> RadiusSchedule:
    """Build the radius schedule; see RadiusSchedule for the definitions."""
    return RadiusSchedule(r, m, varsigma, c, xi)


def schedule_checks(schedule: RadiusSchedule) -> List[CheckResult]:
    """Ordering of the schedule: r_{m,k} < s_{m,k}, decreasing in k, and r_{m,j} > s_{m,k} for j < k."""
    checks = []
    ks = range(schedule.m - 1)
    for k in ks:
        checks.append(CheckResult.flag(
            "r_mk_below_s_mk",
            schedule.r_mk(k) < schedule.s(k),
            "r_{m,k} < s_{m,k}",
            k=k,
            r_mk=schedule.r_mk(k),
            s_mk=schedule.s(k),
        ))
        if k > 0:
            checks.append(CheckResult.flag(
                "s_mk_decreasing",
                schedule.s(k) < schedule.s(k - 1),
                "s_{m,k} < s_{m,k-1}",
                k=k,
            ))
        for j in range(k):
            checks.append(CheckResult.flag(
                "r_mj_above_s_mk",
                schedule.r_mk(j) > schedule.s(k),
                "r_{m,j} > s_{m,k}, j < k",
                j=j,
                k=k,
            ))
    return checks


def gap_checks(r: float, m: int, varsigma: float, c: float, c_prime: float, xi: float = 0.5) -> List[CheckResult]:
    """s'_{m,k} - s_{m,k} > ln(c'/c) - 1 for c' > c and r > 1."""
    if not c_prime > c:
        raise ParameterError("c_prime", c_prime, f"c' > c = {c:g}")
    low = radius_schedule(r, m, varsigma, c, xi)
    high = radius_schedule(r, m, varsigma, c_prime, xi)
    bound = math.log(c_prime / c) - 1.0
    return [
        CheckResult.flag(
            "s_mk_gap",
            high.s(k) - low.s(k) > bound,
            "s'_{m,k} - s_{m,k} > ln(c'/c) - 1",
            k=k,
            gap=high.s(k) - low.s(k),
            bound=bound,
        )
        for k in range(m - 1)
    ]


def slice_checks(schedule: RadiusSchedule, offsets=(0.0, 0.5, 1.0, 2.0, 5.0)) -> List[CheckResult]:
    """
    Slice angles at t = r_{m-2} - (2 + xi) + offset.

    c'' stays below 2 e^{2+xi}, both slice families stay below pi/4, and the pair of slice
    width sets has the disjoint neighborhood property.
    """
    bound = 2.0 * math.exp(2.0 + schedule.xi)
    count = schedule.m - 1
    checks = []
    for offset in offsets:
        t = schedule.inner_radius + offset
        scale = schedule.slice_scale(t)
        theta, phi = schedule.slice_angles(t)
        outer, inner = schedule.slice_widths(t)
        checks.append(CheckResult.below("slice_scale", scale, bound, "c'' < 2 e^{2+xi}", t=t))
        checks.append(CheckResult.below(
            "slice_theta",
            scale * schedule.alpha.sine(0),
            HALF_SQRT2,
            "c'' sin(alpha_k) < sqrt(2)/2",
            t=t,
            theta_max=float(np.max(theta)),
        ))
        checks.append(CheckResult.below(
            "slice_phi",
            scale * schedule.beta.sine(0),
            HALF_SQRT2,
            "c'' sin(beta_k) < sqrt(2)/2",
            t=t,
            phi_max=float(np.max(phi)),
        ))
        checks.append(CheckResult.flag(
            "slice_dnp",
            dnp_check(outer, inner, count),
            "(B(varsigma, c c''), B(varsigma, c'')) satisfies DNP",
            t=t,
        ))
    logger.debug("slice angles checked", m=schedule.m, r=schedule.r, offsets=list(offsets))
    return checks
