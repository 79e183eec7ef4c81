"""Identity sweeps for the right-triangle kernels."""
from typing import List, Tuple

import numpy as np

from src.hyptrig import hyperboloid
from src.hyptrig.triangles import (
    HALF_PI,
    adjacent_leg,
    angle_from_legs,
    hypotenuse,
    leg_from_hyp_angle,
    log_cosh,
    log_sinh,
    polar_to_extension,
)
from src.models.report import CheckResult
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _sample(rng: np.random.Generator, samples: int, s_range: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
    s = rng.uniform(s_range[0], s_range[1], samples)
    beta = rng.uniform(0.01, HALF_PI - 0.01, samples)
    return s, beta


def cosh_law_error(s: np.ndarray, beta: np.ndarray) -> float:
    """Max relative error of cosh(s) = cosh(r) cosh(t)."""
    r, t = polar_to_extension(s, beta)
    return float(np.max(np.abs(np.expm1(log_cosh(s) - log_cosh(r) - log_cosh(t)))))


def law_of_sines_error(s: np.ndarray, beta: np.ndarray) -> float:
    """Max relative error of sinh(r) = sin(beta) sinh(s)."""
    r = leg_from_hyp_angle(s, beta)
    return float(np.max(np.abs(np.expm1(log_sinh(r) - np.log(np.sin(beta)) - log_sinh(s)))))


def round_trip_error(s: np.ndarray, beta: np.ndarray) -> float:
    """Max error of (s, beta) -> (r, t) -> (s, beta)."""
    r, t = polar_to_extension(s, beta)
    s_back = hypotenuse(r, t)
    beta_back = angle_from_legs(np.minimum(r, s_back), s_back)
    return float(max(np.max(np.abs(s_back - s) / np.maximum(1.0, s)), np.max(np.abs(beta_back - beta))))


def extension_metric_error(s: np.ndarray, beta: np.ndarray) -> float:
    """
    Max relative error of sinh^2(s) dbeta^2 + ds^2 = cosh^2(r) dt^2 + dr^2.

    The Jacobian of (s, beta) -> (r, t) is analytic: sinh r = sin(beta) sinh s and
    tanh t = cos(beta) tanh s.
    """
    r, t = polar_to_extension(s, beta)
    cosh_r2 = np.cosh(r) ** 2
    cosh_t2 = (np.cosh(s) / np.cosh(r)) ** 2
    dr_ds = np.sin(beta) * np.cosh(s) / np.cosh(r)
    dr_db = np.cos(beta) * np.sinh(s) / np.cosh(r)
    dt_ds = np.cos(beta) * cosh_t2 / np.cosh(s) ** 2
    dt_db = -np.tanh(s) * np.sin(beta) * cosh_t2
    g_ss = cosh_r2 * dt_ds ** 2 + dr_ds ** 2
    g_bb = cosh_r2 * dt_db ** 2 + dr_db ** 2
    g_sb = cosh_r2 * dt_ds * dt_db + dr_ds * dr_db
    sinh_s = np.sinh(s)
    errors = np.stack([
        np.abs(g_ss - 1.0),
        np.abs(g_bb / sinh_s ** 2 - 1.0),
        np.abs(g_sb) / sinh_s,
    ])
    return float(np.max(errors))


def extension_radius_error(t: np.ndarray, theta: np.ndarray) -> float:
    """
    Max error of r(x, t) = asinh(sinh(t) sin(beta(x))) against the hyperboloid embedding.

    x = (cos theta, sin theta) on S^1, the equator is {x_1 = 0}; the distance from
    (sinh(t) x, cosh(t)) to the totally geodesic H^1 has sinh equal to |sinh(t) x_1|.
    """
    beta = np.arcsin(np.abs(np.sin(theta)))
    r = leg_from_hyp_angle(t, np.minimum(beta, HALF_PI))
    direct = np.arcsinh(np.abs(np.sinh(t) * np.sin(theta)))
    return float(np.max(np.abs(r - direct) / np.maximum(1.0, direct)))


def tangent_law_error(s: np.ndarray, beta: np.ndarray) -> float:
    """Max error of cos(beta) = tanh(t) / tanh(s)."""
    t = adjacent_leg(s, beta)
    return float(np.max(np.abs(np.tanh(t) - np.cos(beta) * np.tanh(s))))


def hyperboloid_error(s: np.ndarray, beta: np.ndarray) -> float:
    """Max error of (r, t) against the high-precision hyperboloid construction."""
    r, t = polar_to_extension(s, beta)
    worst = 0.0
    for s_i, b_i, r_i, t_i in zip(s, beta, r, t):
        r_ref, t_ref = hyperboloid.triangle_from_hyp_angle(float(s_i), float(b_i))
        worst = max(worst, abs(r_i - r_ref) / max(1.0, r_ref), abs(t_i - t_ref) / max(1.0, t_ref))
    return float(worst)


def monotonicity_violations(points: int = 200, s_max: float = 20.0) -> int:
    """Count decreases of leg_from_hyp_angle along sorted grids in each argument."""
    s = np.linspace(0.0, s_max, points)
    beta = np.linspace(0.0, HALF_PI, points)
    grid = leg_from_hyp_angle(s[:, None], beta[None, :])
    return int(np.sum(np.diff(grid, axis=0) < 0.0) + np.sum(np.diff(grid, axis=1) < 0.0))


def identity_panel(
    samples: int,
    tol: float,
    seed: int,
    s_range: Tuple[float, float] = (0.1, 20.0),
    oracle_samples: int = 200,
) -> List[CheckResult]:
    """
    Run every trigonometric identity sweep.

    Args:
        samples: Number of random (s, beta) samples
        tol: Maximum admissible error
        seed: Seed of the sample generator
        s_range: Interval for the hypotenuse
        oracle_samples: Leading samples also checked with the hyperboloid model

    Returns:
        One CheckResult per identity
    """
    rng = np.random.default_rng(seed)
    s, beta = _sample(rng, samples, s_range)
    theta = rng.uniform(-np.pi, np.pi, samples)

    checks = [
        CheckResult.below("cosh_law", cosh_law_error(s, beta), tol, "|cosh s/(cosh r cosh t) - 1|"),
        CheckResult.below("law_of_sines", law_of_sines_error(s, beta), tol, "|sinh r/(sin b sinh s) - 1|"),
        CheckResult.below("polar_round_trip", round_trip_error(s, beta), tol, "|(s,b) -> (r,t) -> (s,b)|"),
        CheckResult.below(
            "extension_metric",
            extension_metric_error(s, beta),
            tol,
            "sinh^2 s db^2 + ds^2 = cosh^2 r dt^2 + dr^2",
        ),
        CheckResult.below(
            "extension_radius",
            extension_radius_error(s, theta),
            tol,
            "r = asinh(sinh t sin b(x))",
        ),
        CheckResult.below("tangent_law", tangent_law_error(s, beta), tol, "|tanh t - cos b tanh s|"),
        CheckResult.below(
            "hyperboloid_oracle",
            hyperboloid_error(s[:oracle_samples], beta[:oracle_samples]),
            tol,
            "legs measured in the hyperboloid model",
        ),
        CheckResult.below(
            "monotone_leg",
            float(monotonicity_violations(s_max=s_range[1])),
            0.0,
            "no decrease along sorted grids",
        ),
    ]
    worst = max(check.measured or 0.0 for check in checks[:-1])
    logger.info("identity panel finished", samples=samples, tol=tol, worst=worst)
    return checks
