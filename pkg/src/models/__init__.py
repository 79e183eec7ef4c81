"""Models package."""
from src.models.params import RunConfig, SmoothingParams
from src.models.report import CheckResult, Report

__all__ = [
    'SmoothingParams',
    'RunConfig',
    'CheckResult',
    'Report'
]
