"""Reindexing of extension families by the radius of their base cut."""
import numpy as np

from src.hyptrig import asinh_exp, log_sinh
from src.hyptrig.triangles import HALF_PI
from src.utils.errors import DomainError


def _check_beta(name: str, beta: float) -> float:
    if not 0.0 < beta <= HALF_PI:
        raise DomainError(name, beta, "(0, pi/2]")
    return beta


def reindex_extension_family(beta0: float, s: np.ndarray) -> np.ndarray:
    """lambda(s) = asinh(sinh(s) sin(beta0)); the identity when beta0 = pi/2."""
    _check_beta("beta0", beta0)
    s = np.asarray(s, dtype=float)
    if beta0 == HALF_PI:
        return s
    with np.errstate(divide="ignore"):
        return asinh_exp(log_sinh(s) + np.log(np.sin(beta0)))


def reindex_inverse(beta0: float, lam: np.ndarray) -> np.ndarray:
    """s(lambda) = asinh(sinh(lambda) / sin(beta0))."""
    _check_beta("beta0", beta0)
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore"):
        return asinh_exp(log_sinh(lam) - np.log(np.sin(beta0)))


def reindexed_radius(lam: np.ndarray, beta: float, b: float, beta0: float) -> np.ndarray:
    """
    theta(lambda, beta, b) = asinh(sinh(b + s(lambda)) sin(beta)).

    The radius of the base cut met at angle beta after moving b further out along the
    ray of the reindexed family.
    """
    _check_beta("beta", beta)
    s = reindex_inverse(beta0, lam)
    return asinh_exp(log_sinh(b + s) + np.log(np.sin(beta)))


def shift_limit(beta: float, b: float, beta0: float) -> float:
    """lim_{lambda -> inf} theta(lambda, beta, b) - lambda = b + ln(sin(beta) / sin(beta0))."""
    _check_beta("beta", beta)
    _check_beta("beta0", beta0)
    return b + float(np.log(np.sin(beta) / np.sin(beta0)))
