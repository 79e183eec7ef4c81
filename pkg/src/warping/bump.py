"""Smooth step functions and their affine rescalings."""
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import expit

from src.utils.errors import ParameterError

ArrayLike = np.ndarray

RHO_SLOPE_BOUND = 3.0
RHO_CURVATURE_BOUND = 12.0

# Outside (EDGE, 1 - EDGE) the derivatives are below 1e-400 and are returned as 0.
EDGE = 1e-3


def _exponent(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 - x) - 1.0 / x


def rho(x: ArrayLike) -> np.ndarray:
    """
    The step rho(x) = f(x) / (f(x) + f(1 - x)) with f(x) = exp(-1/x).

    rho is 0 on (-inf, 0], 1 on [1, inf) and monotone in between. Both flat pieces are
    returned exactly.
    """
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        ramp = expit(_exponent(np.where(inside, x, 0.5)))
    return np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0, ramp))


def rho_derivative(x: ArrayLike, order: int = 1) -> np.ndarray:
    """First or second derivative of rho."""
    if order not in (1, 2):
        raise ParameterError("order", order, "order in {1, 2}")
    x = np.asarray(x, dtype=float)
    active = (x > EDGE) & (x < 1.0 - EDGE)
    y = np.where(active, x, 0.5)
    s = expit(_exponent(y))
    s1 = s * (1.0 - s)
    u1 = 1.0 / (1.0 - y) ** 2 + 1.0 / y ** 2
    if order == 1:
        value = s1 * u1
    else:
        u2 = 2.0 / (1.0 - y) ** 3 - 2.0 / y ** 3
        value = s1 * (1.0 - 2.0 * s) * u1 ** 2 + s1 * u2
    return np.where(active, value, 0.0)


@lru_cache(maxsize=None)
def certified_bounds(samples: int = 200_001) -> Tuple[float, float]:
    """
    Upper bounds (b1, b2) for sup |rho'| and sup |rho''|.

    Each sampled maximum is padded by the largest jump between neighbouring samples,
    which bounds the variation of a continuous function between grid nodes.
    """
    x = np.linspace(0.0, 1.0, samples)
    bounds = []
    for order in (1, 2):
        values = np.abs(rho_derivative(x, order))
        bounds.append(float(values.max() + np.max(np.abs(np.diff(values)))))
    return bounds[0], bounds[1]


@dataclass(frozen=True)
class AffineBump:
    """t -> rho(slope * t + offset), with its first two t-derivatives."""

    slope: float
    offset: float
    name: str = ""

    def __call__(self, t: ArrayLike) -> np.ndarray:
        return rho(self.slope * np.asarray(t, dtype=float) + self.offset)

    def d1(self, t: ArrayLike) -> np.ndarray:
        return self.slope * rho_derivative(self.slope * np.asarray(t, dtype=float) + self.offset, 1)

    def d2(self, t: ArrayLike) -> np.ndarray:
        return self.slope ** 2 * rho_derivative(self.slope * np.asarray(t, dtype=float) + self.offset, 2)

    @property
    def slope_bound(self) -> float:
        """Certified bound for sup |d/dt|."""
        return abs(self.slope) * RHO_SLOPE_BOUND

    @property
    def curvature_bound(self) -> float:
        """Certified bound for sup |d^2/dt^2|."""
        return self.slope ** 2 * RHO_CURVATURE_BOUND

    @property
    def support(self) -> Tuple[float, float]:
        """The interval outside of which the bump is constant."""
        ends = sorted(((0.0 - self.offset) / self.slope, (1.0 - self.offset) / self.slope))
        return ends[0], ends[1]

    @classmethod
    def scaled(cls, a: float, d: float) -> "AffineBump":
        """rho_{a,d}(t) = rho(2 (t - a) / d): 0 for t <= a, 1 for t >= a + d/2."""
        if not d > 0.0:
            raise ParameterError("d", d, "d > 0")
        return cls(slope=2.0 / d, offset=-2.0 * a / d, name=f"rho[{a:g},{d:g}]")

    @classmethod
    def local(cls, r0: float) -> "AffineBump":
        """rho_{r0}(t) = rho(1 - 2 (t - r0)): 1 for t <= r0, 0 for t >= r0 + 1/2."""
        return cls(slope=-2.0, offset=1.0 + 2.0 * r0, name=f"rho[{r0:g}]")


def bump_scaled(a: float, d: float, t: ArrayLike) -> ArrayLike:
    """rho_{a,d}(t); |rho_{a,d}'| < 6/d and |rho_{a,d}''| < 48/d^2."""
    value = AffineBump.scaled(a, d)(t)
    return float(value) if np.ndim(value) == 0 else value
