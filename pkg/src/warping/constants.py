"""Explicit constants of the smoothing estimates, evaluated in log domain.

Every constant is a closed-form expression in (n, xi, c, ...). Logarithms are the
primary representation; exponentiated values overflow to inf for large inputs.
An arbitrary-precision evaluation of the same formulas serves as an oracle.
"""
import math
from typing import Callable, Dict, Optional

import mpmath
import numpy as np
from pydantic import BaseModel, Field

from src.metricfield.families import sphere_bound_constant
from src.utils.errors import ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

LN2 = math.log(2.0)


def _lfact(n: int) -> float:
    return math.lgamma(n + 1)


def _logaddexp(a: float, b: float) -> float:
    return float(np.logaddexp(a, b))


def _exp(log_value: float) -> float:
    return math.exp(log_value) if log_value < 709.0 else math.inf


def _check(n: int, xi: float, c: float) -> None:
    if n < 1:
        raise ParameterError("n", n, "n >= 1")
    if not xi > 0.0:
        raise ParameterError("xi", xi, "xi > 0")
    if not c > 1.0:
        raise ParameterError("c", c, "c > 1")


def log_c4(c: float, n: int) -> float:
    """ln sqrt(n n! c^{n+1}), the factor bound of a c-bounded metric."""
    return 0.5 * (math.log(n) + _lfact(n) + (n + 1) * math.log(c))


def log_chart_constant(c: float, n: int, xi: float) -> float:
    """ln C(c, n, xi) = ln[2 e^{2(1+xi)} n^3 c4^3 (4 c^{3/2} + (27/4)(n!)^2 c^{(4n+11)/2})]."""
    _check(n, xi, c)
    lc = math.log(c)
    bracket = _logaddexp(
        math.log(4.0) + 1.5 * lc,
        math.log(27.0 / 4.0) + 2.0 * _lfact(n) + 0.5 * (4 * n + 11) * lc,
    )
    return LN2 + 2.0 * (1.0 + xi) + 3.0 * math.log(n) + 3.0 * log_c4(c, n) + bracket


def log_c1(c: float, n: int, xi: float) -> float:
    """ln C_1(c, n, xi) = ln 128 + ln C(2^{4n} c, n, xi)."""
    return 7.0 * LN2 + log_chart_constant(2.0 ** (4 * n) * c, n, xi)


def log_c2(n: int, x: float) -> float:
    """
    ln C_2(n, x) = ln[x (a(n, x') + b(n, x'))] with x' = [n! x^{n+1}]^n.

    a(n, c) = 2 c14 n^2 (n! c^{n+1})^3, b(n, c) = n^3 (n! c^{n+1})^3 and
    c14 = (3/2) n^{3/2} n! c^{n+2}.
    """
    if n < 1 or not x > 0.0:
        raise ParameterError("x", x, "n >= 1 and x > 0")
    lx = math.log(x)
    lxp = n * (_lfact(n) + (n + 1) * lx)
    l14 = math.log(1.5) + 1.5 * math.log(n) + _lfact(n) + (n + 2) * lxp
    cube = 3.0 * (_lfact(n) + (n + 1) * lxp)
    return lx + 2.0 * math.log(n) + cube + _logaddexp(LN2 + l14, math.log(n))


def excess_after_extension(a: float, xi: float) -> float:
    """xi - e^{-(a - (7 + 3xi))}, the excess kept by an extension at radius a > 7 + 3xi."""
    if not a > 7.0 + 3.0 * xi:
        raise ParameterError("a", a, f"a > 7 + 3 xi = {7.0 + 3.0 * xi:g}")
    return xi - math.exp(-(a - (7.0 + 3.0 * xi)))


def excess_after_smoothing(radius: float, xi: float) -> float:
    """xi - e^{-R/2}, the excess of the smoothed metric for data radius R."""
    return xi - math.exp(-radius / 2.0)


def excess_loss(r0: float, xi: float) -> float:
    """kappa = 4 e^{2(1+xi)} / cosh(r0 - (2 + xi))."""
    return 4.0 * math.exp(2.0 * (1.0 + xi)) / math.cosh(r0 - (2.0 + xi))


class ConstantsTable(BaseModel):
    """All constants for one choice of (n, xi, c, c_*, eps, k)."""

    n: int = Field(..., ge=1, description="Fiber dimension")
    xi: float = Field(..., gt=0.0, description="Chart excess")
    c: float = Field(..., gt=1.0, description="Boundedness constant")
    c_star: float = Field(..., gt=1.0, description="Boundedness constant of the forced target")
    eps: float = Field(..., gt=0.0, description="Target hyperbolicity")
    k: int = Field(default=1, ge=1, description="Extension dimension")
    c_sphere: Dict[int, float] = Field(..., description="c_{S^m} for every sphere dimension used")
    log_values: Dict[str, float] = Field(default_factory=dict, description="Natural logs of positive constants")
    values: Dict[str, float] = Field(default_factory=dict, description="Constants, inf past the float range")

    def value(self, name: str) -> float:
        return self.values[name]


def _log_a(c_sphere: Dict[int, float], m: int, log_eps: float, xi: float) -> float:
    """a_m(eps, xi) = ln(C_1(c_{S^{m-1}}, m - 1, xi) / eps), given ln eps."""
    return log_c1(c_sphere[m - 1], m - 1, xi) - log_eps


def constants(
    n: int,
    xi: float,
    c: float,
    c_star: float,
    eps: float,
    k: int = 1,
    c_sphere: Optional[Callable[[int], float]] = None,
) -> ConstantsTable:
    """
    Evaluate the constants table.

    Args:
        n: Fiber dimension (the cone is (n+1)-dimensional)
        xi: Chart excess
        c: Boundedness constant for C and C_1
        c_star: Boundedness constant of the target metric g_*
        eps: Target hyperbolicity
        k: Extension dimension for C_3, C_4 and R_{n,k}
        c_sphere: m -> c_{S^m}; defaults to the measured gnomonic-atlas constant
    """
    _check(n, xi, c)
    spheres = range(1, n + k + 1)
    measure = c_sphere or (lambda m: sphere_bound_constant(m, per_axis=9 if m <= 2 else 5))
    c_s = {m: float(measure(m)) for m in spheres}

    logs: Dict[str, float] = {}
    logs["C"] = log_chart_constant(c, n, xi)
    logs["C1"] = log_c1(c, n, xi)
    logs["C1_prime"] = log_c1(c_s[n], n, xi)
    logs["C2"] = log_c2(n, c)
    logs["eps0"] = log_c2(n, c_star + c_s[n])
    logs["C4"] = log_c1(c_s[k], k, xi)
    logs["C3"] = _logaddexp(11.0 + 4.0 * xi, logs["C4"])
    logs["C3_prime"] = _logaddexp(logs["C1_prime"], logs["C3"])
    logs["C6"] = 18.0 + 6.0 * xi
    logs["d_next"] = _logaddexp(
        math.log(12.0) + logs["eps0"] + log_c1(c_star, n, xi) - math.log(eps),
        math.log(2.0 + 4.0 * xi),
    )

    plain: Dict[str, float] = {}
    plain["a_next"] = logs["C1_prime"] - math.log(eps)
    plain["a_prime_next"] = log_c1(c_s[n] + c_star, n, xi) - math.log(eps) + (2.0 + 2.0 * xi)
    plain["lambda_next"] = plain["a_next"] + 0.5 * (logs["C6"] - math.log(eps))
    plain["t0_threshold"] = (1.0 + xi) + logs["C4"] - math.log(eps)
    if n >= 2:
        plain["R"] = (
            -math.log(eps)
            + _log_a(c_s, n, math.log(eps), xi)
            + _log_a(c_s, n + k, logs["C3_prime"] + math.log(eps), xi)
            + 18.0
            + 8.0 * xi
        )
        plain["xi_smoothed"] = excess_after_smoothing(plain["R"], xi)
        # xi - xi_smoothed underflows next to xi; keep it in log form
        logs["excess_gap"] = -plain["R"] / 2.0

    values = {name: _exp(v) for name, v in logs.items()}
    values.update(plain)
    table = ConstantsTable(
        n=n, xi=xi, c=c, c_star=c_star, eps=eps, k=k, c_sphere=c_s, log_values=logs, values=values,
    )
    logger.debug("constants evaluated", n=n, xi=xi, c=c, log_C1=logs["C1"])
    return table


def increasing_in_c(n: int, xi: float, c_values=(1.5, 2.0, 3.0, 5.0, 10.0)) -> bool:
    """C and C_1 grow with c at the sampled values."""
    logs = [(log_chart_constant(c, n, xi), log_c1(c, n, xi)) for c in c_values]
    return all(a[0] < b[0] and a[1] < b[1] for a, b in zip(logs, logs[1:]))


def oracle_log_chart_constant(c: float, n: int, xi: float, dps: int = 50) -> float:
    """ln C(c, n, xi) in arbitrary precision, directly from the product formula."""
    with mpmath.workdps(dps):
        c = mpmath.mpf(c)
        fact = mpmath.factorial(n)
        c4 = mpmath.sqrt(n * fact * c ** (n + 1))
        bracket = 4 * c ** mpmath.mpf(1.5) + mpmath.mpf(27) / 4 * fact ** 2 * c ** (mpmath.mpf(4 * n + 11) / 2)
        value = 2 * mpmath.exp(2 * (1 + mpmath.mpf(xi))) * n ** 3 * c4 ** 3 * bracket
        return float(mpmath.log(value))


def oracle_log_c2(n: int, x: float, dps: int = 50) -> float:
    """ln C_2(n, x) in arbitrary precision."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        fact = mpmath.factorial(n)
        xp = (fact * x ** (n + 1)) ** n
        cube = (fact * xp ** (n + 1)) ** 3
        c14 = mpmath.mpf(3) / 2 * mpmath.mpf(n) ** mpmath.mpf(1.5) * fact * xp ** (n + 2)
        a = 2 * c14 * n ** 2 * cube
        b = n * n ** 2 * cube
        return float(mpmath.log(x * (a + b)))


def lambda_next(c: float, n: int, eps_prime: float, eps: float, xi: float) -> float:
    """lambda_{n+1} = ln(C_1(c, n, xi) / eps') + (1/2) ln(C_6 / eps)."""
    return log_c1(c, n, xi) - math.log(eps_prime) + 0.5 * (18.0 + 6.0 * xi - math.log(eps))


def slow_family_bound(c: float, n: int, xi: float, T: float, eps: float) -> float:
    """C(c, n, xi) (e^{-T} + eps), the hyperbolicity of e^{2t} g_t + dt^2 on I(xi)."""
    return _exp(log_chart_constant(c, n, xi)) * (math.exp(-T) + eps)


def forcing_bound(c: float, n: int, xi: float, r: float, d: float, eps0: float) -> float:
    """C_1(c, n, xi) (e^{-r} + (12/d) eps0), the hyperbolicity of H_{a,d} g outside B_r."""
    return _exp(log_c1(c, n, xi)) * (math.exp(-r) + 12.0 / d * eps0)


def warp_forcing_bound(xi: float, r0: float, eps: float) -> float:
    """e^{18+6xi} (e^{-2 r0} + eps), the hyperbolicity of W_{r0} g."""
    return math.exp(18.0 + 6.0 * xi) * (math.exp(-2.0 * r0) + eps)


def extension_bound(c_sphere_k: float, k: int, xi: float, eps: float, r: float) -> float:
    """C_3(k, xi) (eps + e^{-r}) with C_3 = e^{11+4xi} + C_1(c_{S^k}, k, xi)."""
    log_c3 = _logaddexp(11.0 + 4.0 * xi, log_c1(c_sphere_k, k, xi))
    return _exp(log_c3) * (eps + math.exp(-r))
