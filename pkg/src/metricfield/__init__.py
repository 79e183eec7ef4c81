"""Metric fields on model charts, families, norms and curvature."""
from src.metricfield.atlas import FiberAtlas, FiberChart
from src.metricfield.chart import CoordinateBox, ModelChart, PlaneSpec
from src.metricfield.curvature import (
    CurvatureData,
    Profile,
    curvature_data,
    profile_curvature,
    riemann_curvature,
    sectional_curvature,
    sectional_curvatures,
    warped_sectional,
)
from src.metricfield.families import (
    MetricFamily,
    SlownessReport,
    family_from_variable_field,
    is_c_bounded,
    is_eps_slow,
    measure_slowness,
)
from src.metricfield.field import FieldKind, MetricField, constant_field, hyperbolic_model
from src.metricfield.norms import (
    HyperbolicityWitness,
    NormWitness,
    blend,
    ck_seminorm,
    ck_seminorm_witness,
    is_eps_hyperbolic,
    radial_reach,
)
from src.metricfield.model_panel import model_curvature_panel, model_fields
from src.metricfield.pullback import PullbackChart, chart_pullback

__all__ = [
    'CoordinateBox',
    'ModelChart',
    'PlaneSpec',
    'FieldKind',
    'MetricField',
    'constant_field',
    'hyperbolic_model',
    'NormWitness',
    'HyperbolicityWitness',
    'ck_seminorm',
    'ck_seminorm_witness',
    'is_eps_hyperbolic',
    'blend',
    'radial_reach',
    'FiberAtlas',
    'FiberChart',
    'MetricFamily',
    'SlownessReport',
    'is_c_bounded',
    'is_eps_slow',
    'measure_slowness',
    'family_from_variable_field',
    'PullbackChart',
    'chart_pullback',
    'CurvatureData',
    'Profile',
    'curvature_data',
    'riemann_curvature',
    'sectional_curvature',
    'sectional_curvatures',
    'warped_sectional',
    'profile_curvature',
    'model_fields',
    'model_curvature_panel'
]
