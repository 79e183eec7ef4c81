"""Hyperboloid-model constructions used as an independent oracle.

Points of H^2 are vectors x in R^{2,1} with <x, x> = -1, x_2 > 0. All arithmetic is
carried out with mpmath at the working precision set by ``digits``.
"""
from typing import Sequence, Tuple

import mpmath

Vector = Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]


def minkowski_dot(x: Sequence, y: Sequence) -> mpmath.mpf:
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]


def distance(x: Sequence, y: Sequence) -> mpmath.mpf:
    """Geodesic distance acosh(-<x, y>)."""
    return mpmath.acosh(max(-minkowski_dot(x, y), mpmath.mpf(1)))


def _tangent_at(base: Sequence, point: Sequence) -> Vector:
    """Unnormalized initial velocity at ``base`` of the geodesic towards ``point``."""
    lam = minkowski_dot(base, point)
    return tuple(point[i] + lam * base[i] for i in range(3))


def angle_at(base: Sequence, a: Sequence, b: Sequence) -> mpmath.mpf:
    """Interior angle at ``base`` of the geodesic triangle (base, a, b)."""
    u = _tangent_at(base, a)
    v = _tangent_at(base, b)
    cos_angle = minkowski_dot(u, v) / mpmath.sqrt(minkowski_dot(u, u) * minkowski_dot(v, v))
    return mpmath.acos(max(min(cos_angle, mpmath.mpf(1)), mpmath.mpf(-1)))


def right_triangle_vertices(r: float, t: float, digits: int = 50) -> Tuple[Vector, Vector, Vector]:
    """
    Vertices (o, p, q) of a right triangle with legs t = d(o, p), r = d(p, q).

    The right angle sits at p; the leg op runs along the x_0 axis.
    """
    with mpmath.workdps(digits):
        r = mpmath.mpf(r)
        t = mpmath.mpf(t)
        o = (mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1))
        p = (mpmath.sinh(t), mpmath.mpf(0), mpmath.cosh(t))
        # unit normal to op at p is e_1
        q = (mpmath.cosh(r) * p[0], mpmath.sinh(r), mpmath.cosh(r) * p[2])
        return o, p, q


def measure_triangle(r: float, t: float, digits: int = 50) -> Tuple[float, float, float]:
    """
    Build the triangle with legs (r, t) and measure (hypotenuse, beta, alpha).

    beta is the angle at o (opposite r), alpha the angle at q (opposite t).
    """
    with mpmath.workdps(digits):
        o, p, q = right_triangle_vertices(r, t, digits)
        s = distance(o, q)
        beta = angle_at(o, p, q) if s > 0 else mpmath.mpf(0)
        alpha = angle_at(q, o, p) if s > 0 else mpmath.pi / 2
        return float(s), float(beta), float(alpha)


def triangle_from_hyp_angle(s: float, beta: float, digits: int = 50) -> Tuple[float, float]:
    """
    Construct the right triangle with hypotenuse s and angle beta at o; return (r, t).

    The hypotenuse is laid out first and the foot of the perpendicular from its far
    end onto the ray from o at angle beta is located by projection.
    """
    with mpmath.workdps(digits):
        s = mpmath.mpf(s)
        beta = mpmath.mpf(beta)
        o = (mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1))
        q = (mpmath.sinh(s) * mpmath.cos(beta), mpmath.sinh(s) * mpmath.sin(beta), mpmath.cosh(s))
        # the leg geodesic is H^2 intersected with the plane x_1 = 0; the foot of the
        # perpendicular from q is its normalized projection
        foot_raw = (q[0], mpmath.mpf(0), q[2])
        norm = mpmath.sqrt(-minkowski_dot(foot_raw, foot_raw))
        p = tuple(c / norm for c in foot_raw)
        return float(distance(p, q)), float(distance(o, p))
