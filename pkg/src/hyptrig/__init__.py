"""Hyperbolic right-triangle kernels."""
from src.hyptrig.identities import identity_panel
from src.hyptrig.triangles import (
    RightTriangle,
    adjacent_leg,
    angle_from_legs,
    asinh_exp,
    extension_to_polar,
    hypotenuse,
    leg_from_hyp_angle,
    log_cosh,
    log_sinh,
    polar_to_extension,
)

__all__ = [
    'RightTriangle',
    'leg_from_hyp_angle',
    'adjacent_leg',
    'hypotenuse',
    'angle_from_legs',
    'polar_to_extension',
    'extension_to_polar',
    'log_sinh',
    'log_cosh',
    'asinh_exp',
    'identity_panel'
]
