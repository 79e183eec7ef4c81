"""Neighborhood width sets and the radius schedule of cone patches."""
from src.widths.schedule import (
    RadiusSchedule,
    gap_checks,
    radius_schedule,
    schedule_checks,
    slice_checks,
)
from src.widths.width_set import (
    WidthSet,
    dnp_check,
    dnp_terms,
    induced_link_widths,
    is_natural,
    link_sines,
    width_table,
)

__all__ = [
    'WidthSet',
    'dnp_check',
    'dnp_terms',
    'is_natural',
    'link_sines',
    'induced_link_widths',
    'width_table',
    'RadiusSchedule',
    'radius_schedule',
    'schedule_checks',
    'gap_checks',
    'slice_checks'
]
