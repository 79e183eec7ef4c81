"""
The smoothed cone metric over a circle complex.

A circle P of k' quarter arcs has length k' pi/2, so its canonical metric is K sigma_{S^1}
with K = (k'/4)^2 after the constant-speed map onto S^1. The smoothed metric

    G = sinh^2(t) mu(t) sigma_{S^1} + dt^2,   mu(t) = 1 + (K - 1) rho((t - r + d2) / d2)

is hyperbolic for t <= r - d2 and canonical for t >= r.
"""
from typing import Optional

import numpy as np

from src.complexes import AllRightComplex, ConePoint, circle_complex
from src.metricfield import FiberAtlas, Profile
from src.smoothing.cone_metric import ConeMetric, Facet, Provenance, facet_coordinates
from src.smoothing.continuation import continuation_metric
from src.smoothing.global_smoothing import GlobalSmoothing
from src.utils.errors import ParameterError, UnsupportedDimensionError
from src.warping import AffineBump, RadialMetric


def link_scale(k_prime: int) -> float:
    """K = (k'/4)^2; exact in floating point."""
    return (k_prime / 4.0) ** 2


def _check(k_prime: int, r: float, d2: float) -> None:
    if k_prime < 3:
        raise ParameterError("k_prime", k_prime, "k' >= 3")
    if not d2 > 0.0:
        raise ParameterError("d2", d2, "d2 > 0")
    if not r > d2:
        raise ParameterError("r", r, f"r > d2 = {d2:g}")


def mu_profile(k_prime: int, r: float, d2: float) -> Profile:
    """mu(t) with its first two derivatives; both flat pieces are exact."""
    _check(k_prime, r, d2)
    scale = link_scale(k_prime) - 1.0
    bump = AffineBump(slope=1.0 / d2, offset=(d2 - r) / d2, name=f"mu[{r:g},{d2:g}]")

    def value(t: np.ndarray) -> np.ndarray:
        w = bump(t)
        return np.where(w == 0.0, 1.0, np.where(w == 1.0, 1.0 + scale, 1.0 + scale * w))

    return Profile(
        value=value,
        d1=lambda t: scale * bump.d1(t),
        d2=lambda t: scale * bump.d2(t),
        name=f"mu(k'={k_prime})",
    )


def g_dim1_model(k_prime: int, r: float, d2: float) -> RadialMetric:
    """The smoothed metric written on the round S^1."""
    mu = mu_profile(k_prime, r, d2)
    atlas = FiberAtlas.circle()

    def unwarped(X: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.asarray(mu(t))[..., None, None] * atlas.round_form(X)

    return RadialMetric(atlas=atlas, unwarped=unwarped, label=f"G1(k'={k_prime},r={r:g},d2={d2:g})")


def dim1_cone_metric(
    complex_: AllRightComplex,
    r: float,
    d2: float,
    phi: Optional[GlobalSmoothing] = None,
) -> ConeMetric:
    """
    G(P, r) on the cone over a circle complex, as mu(t) phi^* sigma_{S^1}.

    Raises:
        UnsupportedDimensionError: If P is not a circle
    """
    if complex_.dim != 1:
        raise UnsupportedDimensionError(complex_.dim, "the one-dimensional construction needs a circle")
    phi = phi or GlobalSmoothing.canonical(complex_)
    k_prime = phi.sectors
    mu = mu_profile(k_prime, r, d2)

    def evaluator(p: ConePoint, facet: Facet) -> np.ndarray:
        x = facet_coordinates(p.point, facet)
        return float(mu(p.s)) * phi.pullback_round(x, facet)

    return ConeMetric(
        complex_=complex_,
        provenance=Provenance.SMOOTHED,
        evaluator=evaluator,
        label=f"G({complex_.name},r={r:g},d2={d2:g})",
        model=g_dim1_model(k_prime, r, d2),
    )


def g_dim1(k_prime: int, r: float, d2: float) -> ConeMetric:
    """
    The smoothed metric over the k'-gon circle.

    Raises:
        ParameterError: Unless k' >= 3 and r > d2 > 0
    """
    _check(k_prime, r, d2)
    return dim1_cone_metric(circle_complex(k_prime), r, d2)


def g_dim1_continued(k_prime: int, r: float, d2: float) -> RadialMetric:
    """
    The same construction obtained by continuing the constant family K sigma_{S^1}.

    Continuation at lambda = r - 1/2 with width d2 - 1/2 agrees with ``g_dim1_model``
    for t <= r - d2 and t >= r; only the transition profile differs.
    """
    _check(k_prime, r, d2)
    atlas = FiberAtlas.circle()
    canonical = RadialMetric.constant_cut(atlas, lambda X: link_scale(k_prime) * atlas.round_form(X), label="K sigma")
    return continuation_metric(canonical, r - 0.5, d2 - 0.5)


def dim1_curvature(k_prime: int, r: float, d2: float, t: np.ndarray) -> np.ndarray:
    """
    Gaussian curvature of sinh^2(t) mu(t) dtheta^2 + dt^2.

    With q = ln(mu)/2 the warping function is sinh(t) e^q and
    K = -(1 + 2 coth(t) q' + q'' + q'^2).
    """
    mu = mu_profile(k_prime, r, d2)
    t = np.asarray(t, dtype=float)
    value, slope, bend = mu(t), mu.d1(t), mu.d2(t)
    q1 = slope / (2.0 * value)
    q2 = bend / (2.0 * value) - slope ** 2 / (2.0 * value ** 2)
    return -(1.0 + 2.0 * q1 / np.tanh(t) + q2 + q1 ** 2)


def dim1_cut_limit(k_prime: int, d2: float, b: float) -> float:
    """The r-independent factor of the unwarped cut at r + b: 1 + (K - 1) rho(1 + b/d2)."""
    mu = mu_profile(k_prime, d2 + 1.0, d2)
    return float(mu(d2 + 1.0 + b))
