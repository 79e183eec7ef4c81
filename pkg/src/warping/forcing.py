"""Forcing operators: hyperbolic forcing on a band and warp forcing on a ball."""
import numpy as np

from src.metricfield import FiberAtlas, MetricFamily
from src.metricfield.families import FormLike, as_form
from src.utils.errors import DomainError, ParameterError
from src.utils.logger import setup_logger
from src.warping.bump import AffineBump
from src.warping.radial import RadialLike, RadialMetric, WarpDescriptor, as_radial

logger = setup_logger(__name__)


def hyperbolic_forcing(g_star: FormLike, a: float, d: float, atlas: FiberAtlas) -> WarpDescriptor:
    """
    The forced metric sinh^2(t) g_t + dt^2 with g_t = sigma + rho_{a,d}(t) (g_* - sigma).

    For t <= a the result is exactly sinh^2(t) sigma + dt^2 and for t >= a + d/2 its
    unwarped cut is exactly g_*.

    Args:
        g_star: Target fiber metric (None for the round metric, a scalar multiple, a
            constant matrix or an ambient form X -> Q(X))
        a: Radius where the forcing band starts
        d: Width parameter; the band is [a, a + d/2]
        atlas: Fiber atlas the target is given on

    Raises:
        ParameterError: If a <= d or d <= 0
    """
    if not a > d:
        raise ParameterError("a", a, f"a > d = {d}")
    bump = AffineBump.scaled(a, d)
    goal = as_form(atlas, g_star)

    def ambient(X: np.ndarray, t: np.ndarray) -> np.ndarray:
        sigma = atlas.round_form(X)
        target = goal(X)
        w = bump(t)[..., None, None]
        mixed = sigma + w * (target - sigma)
        return np.where(w == 0.0, sigma, np.where(w == 1.0, target, mixed))

    family = MetricFamily(atlas=atlas, interval=(0.0, np.inf), ambient=ambient, label=f"H[{a:g},{d:g}]")
    logger.debug("hyperbolic forcing", a=a, d=d, band=bump.support)
    return WarpDescriptor(profile=np.sinh, family=family, domain=(0.0, np.inf), label=family.label)


def warp_forcing(g: RadialLike, r0: float) -> RadialMetric:
    """
    W_{r0} g = rho_{r0} gbar + (1 - rho_{r0}) g, where gbar = sinh^2(t) g_{r0} + dt^2.

    Inside B_{r0} the result is sinh-warped with the constant unwarped cut g_{r0}; at
    t >= r0 + 1/2 it is g itself. The result is defined on the whole ball even when g
    is only defined outside a ball of radius <= r0.

    Raises:
        DomainError: If g is not defined at radius r0
    """
    radial = as_radial(g)
    if not radial.t_min <= r0 <= radial.t_max:
        raise DomainError("r0", r0, f"[{radial.t_min:g}, {radial.t_max:g}]")
    bump = AffineBump.local(r0)
    outer = r0 + 0.5

    def unwarped(X: np.ndarray, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        frozen = radial.unwarped(X, np.full_like(t, r0))
        moving = radial.unwarped(X, np.maximum(t, r0))
        w = bump(t)[..., None, None]
        mixed = w * frozen + (1.0 - w) * moving
        tt = t[..., None, None]
        return np.where(tt <= r0, frozen, np.where(tt >= outer, moving, mixed))

    return RadialMetric(
        atlas=radial.atlas,
        unwarped=unwarped,
        t_min=0.0,
        t_max=radial.t_max,
        label=f"W[{r0:g}]({radial.label})",
    )
