"""Reweighting e^{2t} g_t + dt^2 into (sinh(t + t0) / sinh t0)^2 g_t + dt^2."""
from typing import List, Sequence

import numpy as np

from src.metricfield import FieldKind, MetricField
from src.models.report import CheckResult
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_T0 = 2.0


def _check_t0(t0: float) -> None:
    if not t0 > MIN_T0:
        raise ParameterError("t0", t0, f"t0 > {MIN_T0:g}")


def ratio_profile(t: np.ndarray, t0: float, order: int = 0) -> np.ndarray:
    """
    Derivatives of f(t) = e^{-t} sinh(t + t0) / sinh(t0).

    f - 1 = q (1 - e^{-2t}) with q = e^{-2 t0} / (1 - e^{-2 t0}), so every derivative
    is explicit.
    """
    t = np.asarray(t, dtype=float)
    q = np.exp(-2.0 * t0) / -np.expm1(-2.0 * t0)
    if order == 0:
        return 1.0 + q * -np.expm1(-2.0 * t)
    return q * (-(-2.0) ** order) * np.exp(-2.0 * t)


def reweight_factor(t: np.ndarray, t0: float, order: int = 0) -> np.ndarray:
    """Derivatives of nu(t) = f(t)^2."""
    f = ratio_profile(t, t0)
    if order == 0:
        return f ** 2
    f1 = ratio_profile(t, t0, 1)
    if order == 1:
        return 2.0 * f * f1
    return 2.0 * f1 ** 2 + 2.0 * f * ratio_profile(t, t0, 2)


def sinh_reweight(g: MetricField, t0: float) -> MetricField:
    """
    g_nu: the fiber block of g multiplied by nu(t) = e^{-2t} (sinh(t + t0) / sinh t0)^2.

    nu(0) = 1, so g_nu and g agree on the slice t = 0. Reweighting the model sigma
    gives the metric sigma_{t0}.

    Raises:
        ParameterError: If t0 <= 2
    """
    _check_t0(t0)
    n = g.dim - 1

    def evaluator(points: np.ndarray) -> np.ndarray:
        out = np.array(g(points), dtype=float, copy=True)
        nu = reweight_factor(points[..., n], t0)[..., None, None]
        out[..., :n, :n] *= nu
        return out

    kind = g.kind if g.kind == FieldKind.WARPED_VARIABLE else FieldKind.GENERAL
    return MetricField(domain=g.domain, evaluator=evaluator, kind=kind, chart=g.chart, label=f"{g.label}~nu[{t0:g}]")


def reweight_bound(eps: float, xi: float, t0: float) -> float:
    """2^6 (eps + e^{2(1 + xi)}) e^{-2 t0}, the allowed |g_nu - g|_{C^2}."""
    return 64.0 * (eps + np.exp(2.0 * (1.0 + xi))) * np.exp(-2.0 * t0)


def model_reweight_bound(xi: float, t0: float) -> float:
    """2^6 e^{2(1 + xi)} e^{-2 t0}, the allowed |sigma - sigma_{t0}|_{C^2}."""
    return reweight_bound(0.0, xi, t0)


def ratio_panel(
    t0_values: Sequence[float] = (2.0, 3.0, 5.0, 10.0),
    t_max: float = 50.0,
    samples: int = 20_001,
) -> List[CheckResult]:
    """
    Six estimates for f(t) = e^{-t} sinh(t + t0)/sinh(t0) over t in [0, t_max].

    The first- and second-derivative constants are 49/24 and 49/12: sup |f'| is
    2 e^{-2t0} / (1 - e^{-2t0}) at t = 0, so smaller constants cannot hold.
    """
    t = np.linspace(0.0, t_max, samples)
    checks: List[CheckResult] = []
    for t0 in t0_values:
        scale = np.exp(-2.0 * t0)
        f = ratio_profile(t, t0)
        f1 = ratio_profile(t, t0, 1)
        f2 = ratio_profile(t, t0, 2)
        nu = reweight_factor(t, t0)
        c0 = float(np.max(np.abs(f - 1.0)))
        c1 = float(np.max(np.abs(f1)))
        c2 = float(np.max(np.abs(f2)))
        nu_norm = max(
            float(np.max(np.abs(nu - 1.0))),
            float(np.max(np.abs(reweight_factor(t, t0, 1)))),
            float(np.max(np.abs(reweight_factor(t, t0, 2)))),
        )
        entries = [
            ("ratio_c0", c0, 49.0 / 48.0 * scale, "(49/48) e^{-2 t0}"),
            ("ratio_d1", c1, 49.0 / 24.0 * scale, "(49/24) e^{-2 t0}"),
            ("ratio_d2", c2, 49.0 / 12.0 * scale, "(49/12) e^{-2 t0}"),
            ("ratio_c2", max(c0, c1, c2), 49.0 / 12.0 * scale, "(49/12) e^{-2 t0}"),
            ("ratio_abs_c2", max(float(np.max(np.abs(f))), c1, c2), 1.03, "1.03"),
            ("square_c2", nu_norm, 16.0 * scale, "16 e^{-2 t0}"),
        ]
        for name, measured, bound, formula in entries:
            checks.append(CheckResult.below(name, measured, bound, formula, t0=t0))
    logger.info("ratio panel evaluated", t0_values=list(t0_values), passed=all(c.passed for c in checks))
    return checks
