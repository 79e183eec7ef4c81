"""Deformation operators on radial metrics and their explicit constants."""
from src.warping.bump import AffineBump, bump_scaled, certified_bounds, rho, rho_derivative
from src.warping.chart_bounds import (
    extension_chart_panel,
    radial_deviation,
    radius_chart_panel,
    slow_family_panel,
)
from src.warping.constants import ConstantsTable, constants, increasing_in_c
from src.warping.extension import extension_radius, hyperbolic_extension
from src.warping.forcing import hyperbolic_forcing, warp_forcing
from src.warping.radial import RadialMetric, WarpDescriptor, as_radial, spherical_cut, unwarped_cut
from src.warping.reindex import reindex_extension_family, reindex_inverse, reindexed_radius, shift_limit
from src.warping.reweight import ratio_panel, sinh_reweight

__all__ = [
    'rho',
    'rho_derivative',
    'certified_bounds',
    'AffineBump',
    'bump_scaled',
    'RadialMetric',
    'WarpDescriptor',
    'as_radial',
    'spherical_cut',
    'unwarped_cut',
    'hyperbolic_forcing',
    'warp_forcing',
    'hyperbolic_extension',
    'extension_radius',
    'sinh_reweight',
    'ratio_panel',
    'ConstantsTable',
    'constants',
    'increasing_in_c',
    'reindex_extension_family',
    'reindex_inverse',
    'reindexed_radius',
    'shift_limit',
    'radius_chart_panel',
    'slow_family_panel',
    'extension_chart_panel',
    'radial_deviation'
]
