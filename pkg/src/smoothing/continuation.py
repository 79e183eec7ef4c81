"""
Continuation C_d of partially defined radial metrics.

For a radial metric g defined at least on t >= lambda, the continuation is the warp
forcing W_lambda g followed by hyperbolic forcing of the frozen cut ghat = g_lambda:

    t >= lambda + 1/2          g_t
    lambda <= t < lambda + 1/2 rho_lambda(t) ghat + (1 - rho_lambda(t)) g_t
    lambda - d <= t < lambda   rho_{lambda-d,d}(t) ghat + (1 - rho_{lambda-d,d}(t)) sigma
    t < lambda - d             sigma
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.metricfield.families import FormLike, as_form
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger
from src.warping import AffineBump, RadialMetric, as_radial, rho, warp_forcing
from src.warping.radial import RadialLike

logger = setup_logger(__name__)

# (fiber points, offset b) -> limit cut at infinity + b
LimitCut = Callable[[np.ndarray, float], np.ndarray]


def _check(lam: float, d: float) -> None:
    if not d > 0.0:
        raise ParameterError("d", d, "d > 0")
    if not lam > d:
        raise ParameterError("lambda", lam, f"lambda > d = {d:g}")


def continuation_metric(g: RadialLike, lam: float, d: float, sigma: FormLike = None) -> RadialMetric:
    """
    C_d(g) at index lambda, defined on the whole cone.

    Args:
        g: Radial metric defined at least on [lambda, t_max]
        lam: Radius where the warp forcing freezes the cut
        d: Width of the hyperbolic forcing band [lambda - d, lambda - d/2]
        sigma: Fiber metric inside the band (round metric by default)

    Raises:
        ParameterError: Unless d > 0 and lambda > d
        DomainError: If g is not defined at lambda
    """
    _check(lam, d)
    radial = as_radial(g)
    warped = warp_forcing(radial, lam)
    bump = AffineBump.scaled(lam - d, d)
    round_form = as_form(radial.atlas, sigma)

    def unwarped(X: np.ndarray, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        frozen = radial.unwarped(X, np.full_like(t, lam))
        outer = warped.unwarped(X, np.maximum(t, lam))
        base = np.broadcast_to(round_form(X), frozen.shape)
        w = bump(t)[..., None, None]
        inner = np.where(w == 1.0, frozen, np.where(w == 0.0, base, w * frozen + (1.0 - w) * base))
        return np.where(t[..., None, None] >= lam, outer, inner)

    logger.debug("continuation", lam=lam, d=d, band=bump.support)
    return RadialMetric(
        atlas=radial.atlas,
        unwarped=unwarped,
        t_min=0.0,
        t_max=radial.t_max,
        label=f"C[{d:g}]({radial.label}@{lam:g})",
    )


@dataclass(frozen=True)
class ContinuedFamily:
    """lambda -> C_d(g_lambda) for an indexed family of radial metrics."""

    family: Callable[[float], RadialLike]
    d: float
    sigma: FormLike = None

    def __call__(self, lam: float) -> RadialMetric:
        return continuation_metric(self.family(lam), lam, self.d, self.sigma)


def continuation(family: Callable[[float], RadialLike], d: float, sigma: FormLike = None) -> ContinuedFamily:
    if not d > 0.0:
        raise ParameterError("d", d, "d > 0")
    return ContinuedFamily(family=family, d=d, sigma=sigma)


def continued_cut_limit(
    base_limit: LimitCut,
    sigma: Callable[[np.ndarray], np.ndarray],
    b: float,
    d: float,
) -> Callable[[np.ndarray], np.ndarray]:
    """
    Cut limit at b of the continued family, given the base family's limits ghat_{inf+b}.

    On [-d, 0] the weight is rho(2 (1 + b/d)), the value of rho_{lambda-d,d} at
    lambda + b, so the limit equals ghat_inf on [-d/2, 0].
    """
    if b <= -d:
        return sigma
    if b < 0.0:
        w = float(rho(2.0 * (1.0 + b / d)))
        return lambda X: w * base_limit(X, 0.0) + (1.0 - w) * sigma(X)
    if b < 0.5:
        v = float(rho(1.0 - 2.0 * b))
        return lambda X: v * base_limit(X, 0.0) + (1.0 - v) * base_limit(X, b)
    return lambda X: base_limit(X, b)
