"""Hyperbolic extensions E_k(h) = cosh^2(r) sigma_{H^k} + h of radial metrics.

A radial metric h = sinh^2(r) h_r + dr^2 on R^{n+1}, centered at o, extends to
H^k x R^{n+1}. Around o the extension is again radial, over S^{n+k} in R^k x R^{n+1}.
At X = (cos(beta) theta, sin(beta) u) and distance s from o its unwarped cut is

    cos^2(beta) sigma_{S^{k-1}} + sin^2(beta) h_r(u) + dbeta^2,   sinh r = sin(beta) sinh s.
"""
import numpy as np

from src.hyptrig import asinh_exp, log_sinh
from src.metricfield import FiberAtlas
from src.utils.errors import ParameterError, UndefinedRegionError
from src.warping.radial import RadialLike, RadialMetric, as_radial

AXIS_TOL = 1e-300


def extension_radius(s: np.ndarray, sin_beta: np.ndarray) -> np.ndarray:
    """r with sinh r = sin(beta) sinh s, evaluated in log domain."""
    with np.errstate(divide="ignore"):
        return asinh_exp(log_sinh(s) + np.log(sin_beta))


def hyperbolic_extension(h: RadialLike, k: int) -> RadialMetric:
    """
    The hyperbolic extension E_k(h) as a radial metric over S^{n+k}.

    The first k ambient coordinates carry the H^k directions; iterating is consistent,
    E_l(E_k(h)) = E_{k+l}(h) pointwise.

    Args:
        h: Radial metric over a round S^n in R^{n+1}
        k: Extension dimension, k >= 1

    Raises:
        ParameterError: If k < 1 or the fiber of h is not a sphere
    """
    if k < 1:
        raise ParameterError("k", k, "k >= 1")
    base = as_radial(h)
    if not base.atlas.spherical:
        raise ParameterError("h", base.label, "radial metric over a round sphere")
    n = base.atlas.dim
    atlas = FiberAtlas.sphere(n + k)

    def unwarped(X: np.ndarray, s: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        s = np.asarray(s, dtype=float)
        normal = X[..., k:]
        sin_beta = np.linalg.norm(normal, axis=-1)
        on_axis = sin_beta < AXIS_TOL
        u = normal / np.where(on_axis, 1.0, sin_beta)[..., None]
        u = np.where(on_axis[..., None], np.eye(n + 1)[0], u)
        r = extension_radius(s, sin_beta)
        if np.any(r[~on_axis] < base.t_min):
            raise UndefinedRegionError(float(np.min(r[~on_axis])), base.t_min)
        r = np.where(on_axis, max(base.t_min, 0.0), r)

        proj_u = np.eye(n + 1) - u[..., :, None] * u[..., None, :]
        excess = proj_u @ (base.unwarped(u, r) - proj_u) @ proj_u
        excess = np.where(on_axis[..., None, None], 0.0, excess)

        out = np.eye(n + k + 1) - X[..., :, None] * X[..., None, :]
        out[..., k:, k:] += excess
        return out

    return RadialMetric(atlas=atlas, unwarped=unwarped, t_min=base.t_min, t_max=base.t_max, label=f"E{k}({base.label})")
