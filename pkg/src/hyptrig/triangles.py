"""Right-triangle relations in the hyperbolic plane, evaluated in log domain.

All functions accept floats or numpy arrays and broadcast. Lengths are in units of
curvature -1, angles in radians. The log-domain forms keep lengths up to ~700 exact
in double precision.
"""
from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np

from src.utils.errors import DomainError

ArrayLike = Union[float, np.ndarray]

LN2 = float(np.log(2.0))
HALF_PI = 0.5 * np.pi


def _out(x: np.ndarray) -> ArrayLike:
    return float(x) if np.ndim(x) == 0 else x


def log_sinh(x: ArrayLike) -> np.ndarray:
    """log(sinh x) for x >= 0; -inf at 0."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        large = x + np.log1p(-np.exp(-2.0 * x)) - LN2
        small = np.log(np.sinh(np.minimum(x, 1.0)))
    return np.where(x > 1.0, large, small)


def log_cosh(x: ArrayLike) -> np.ndarray:
    """log(cosh x)."""
    ax = np.abs(np.asarray(x, dtype=float))
    return ax + np.log1p(np.exp(-2.0 * ax)) - LN2


def asinh_exp(log_y: ArrayLike) -> np.ndarray:
    """asinh(e^log_y) without forming e^log_y when it would overflow."""
    log_y = np.asarray(log_y, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        large = log_y + np.log1p(np.sqrt(1.0 + np.exp(-2.0 * np.maximum(log_y, 0.0))))
        small = np.arcsinh(np.exp(np.minimum(log_y, 0.0)))
    return np.where(log_y > 0.0, large, small)


def _check_length(name: str, value: ArrayLike) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    if np.any(~(value >= 0.0)):
        raise DomainError(name, value.tolist(), "[0, inf)")
    return value


def _check_angle(name: str, value: ArrayLike) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    if np.any(~((value >= 0.0) & (value <= HALF_PI))):
        raise DomainError(name, value.tolist(), "[0, pi/2]")
    return value


def leg_from_hyp_angle(s: ArrayLike, beta: ArrayLike) -> ArrayLike:
    """
    Leg r opposite the angle beta in a right triangle with hypotenuse s.

    Args:
        s: Hypotenuse length
        beta: Angle at the vertex opposite the leg, in [0, pi/2]

    Returns:
        r with sinh(r) = sin(beta) sinh(s)

    Raises:
        DomainError: If s < 0 or beta is outside [0, pi/2]
    """
    s = _check_length("s", s)
    beta = _check_angle("beta", beta)
    with np.errstate(divide="ignore"):
        log_y = np.log(np.sin(beta)) + log_sinh(s)
    r = asinh_exp(log_y)
    r = np.where(beta == HALF_PI, s, r)
    r = np.where((beta == 0.0) | (s == 0.0), 0.0, r)
    return _out(r)


def adjacent_leg(s: ArrayLike, beta: ArrayLike) -> ArrayLike:
    """
    Leg t adjacent to the angle beta in a right triangle with hypotenuse s.

    Uses sinh(t) = sinh(s) cos(beta) / cosh(r), which follows from
    cosh(s) = cosh(r) cosh(t) and sinh(r) = sin(beta) sinh(s).

    Raises:
        DomainError: If s < 0 or beta is outside [0, pi/2]
    """
    s = _check_length("s", s)
    beta = _check_angle("beta", beta)
    r = np.asarray(leg_from_hyp_angle(s, beta))
    with np.errstate(divide="ignore"):
        log_y = log_sinh(s) + np.log(np.cos(beta)) - log_cosh(r)
    t = asinh_exp(log_y)
    t = np.where(beta == 0.0, s, t)
    t = np.where((beta == HALF_PI) | (s == 0.0), 0.0, t)
    return _out(t)


def hypotenuse(r: ArrayLike, t: ArrayLike) -> ArrayLike:
    """
    Hypotenuse s of a right triangle with legs r and t.

    sinh^2(s) = sinh^2(r) + sinh^2(t) + sinh^2(r) sinh^2(t), summed in log domain.

    Raises:
        DomainError: If a leg is negative
    """
    r = _check_length("r", r)
    t = _check_length("t", t)
    a = 2.0 * log_sinh(r)
    b = 2.0 * log_sinh(t)
    with np.errstate(invalid="ignore"):
        log_sq = np.logaddexp(np.logaddexp(a, b), a + b)
    s = asinh_exp(0.5 * log_sq)
    s = np.where(r == 0.0, t, s)
    s = np.where(t == 0.0, r, s)
    return _out(s)


def angle_from_legs(r: ArrayLike, s: ArrayLike) -> ArrayLike:
    """
    Angle beta opposite leg r, given the hypotenuse s.

    Returns:
        asin(sinh r / sinh s) in [0, pi/2]

    Raises:
        DomainError: If r > s, r < 0 or s <= 0
    """
    r = _check_length("r", r)
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0.0)):
        raise DomainError("s", s.tolist(), "(0, inf)")
    if np.any(r > s):
        raise DomainError("r", r.tolist(), "[0, s]")
    ratio = np.exp(log_sinh(r) - log_sinh(s))
    beta = np.arcsin(np.clip(ratio, 0.0, 1.0))
    beta = np.where(r == s, HALF_PI, beta)
    return _out(beta)


def polar_to_extension(s: ArrayLike, beta: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """
    Convert polar coordinates (s, beta) to extension coordinates (r, t).

    r is the distance to the extension axis and t the distance along it.
    """
    return leg_from_hyp_angle(s, beta), adjacent_leg(s, beta)


def extension_to_polar(r: ArrayLike, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Inverse of polar_to_extension."""
    s = hypotenuse(r, t)
    return s, angle_from_legs(r, s)


@dataclass(frozen=True)
class RightTriangle:
    """A hyperbolic right triangle with hypotenuse s and legs r, t."""

    s: float
    r: float
    t: float
    alpha: float
    beta: float

    @classmethod
    def solve(cls, s: float, beta: float) -> "RightTriangle":
        """Solve the triangle from its hypotenuse and the angle opposite r."""
        r, t = polar_to_extension(s, beta)
        alpha = angle_from_legs(min(t, s), s) if s > 0 else HALF_PI - beta
        return cls(s=float(s), r=float(r), t=float(t), alpha=float(alpha), beta=float(beta))

    def residuals(self) -> Dict[str, float]:
        """Relative residuals of the defining identities."""
        cosh_law = float(log_cosh(self.s) - log_cosh(self.r) - log_cosh(self.t))
        if self.s > 0.0 and self.r > 0.0:
            sines = float(log_sinh(self.r) - np.log(np.sin(self.beta)) - log_sinh(self.s))
        else:
            sines = 0.0
        return {"cosh_law": abs(np.expm1(cosh_law)), "law_of_sines": abs(np.expm1(sines))}

    def is_valid(self, tol: float = 1e-12) -> bool:
        in_range = 0.0 <= self.beta <= HALF_PI and self.r <= self.s and self.t <= self.s
        return in_range and all(value <= tol for value in self.residuals().values())
