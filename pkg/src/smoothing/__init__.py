"""Smoothed metrics on hyperbolic cones over all-right complexes."""
from src.smoothing.cone_metric import (
    ConeMetric,
    FacetForm,
    Provenance,
    canonical_metric,
    facet_coordinates,
    frame_facet,
    round_cut,
)
from src.smoothing.continuation import ContinuedFamily, continuation, continuation_metric, continued_cut_limit
from src.smoothing.cut_limits import (
    CutLimitReport,
    continued_dim1_family,
    continued_dim1_limit,
    cut_limit_estimate,
    dim1_family,
    dim1_limit,
    extension_points,
    reindexed_family,
    reindexed_limit,
    surface_family,
    surface_limit,
)
from src.smoothing.dim1 import (
    dim1_cone_metric,
    dim1_curvature,
    dim1_cut_limit,
    g_dim1,
    g_dim1_continued,
    g_dim1_model,
    link_scale,
    mu_profile,
)
from src.smoothing.global_smoothing import GlobalSmoothing
from src.smoothing.manifold_cone import ManifoldConeMetric, manifold_cone_from_params, manifold_cone_metric
from src.smoothing.patched import PatchedEvaluator, overlap_panel, patched_metric
from src.smoothing.pinching import PinchResult, pinch_circle, pinch_surface
from src.smoothing.smoothed import (
    SurfaceSmoothing,
    independence_panel,
    model_panel,
    property_panel,
    random_cone_points,
    smoothed_metric,
    surface_curvature_panel,
)

__all__ = [
    'ConeMetric',
    'FacetForm',
    'Provenance',
    'canonical_metric',
    'facet_coordinates',
    'frame_facet',
    'round_cut',
    'ContinuedFamily',
    'continuation',
    'continuation_metric',
    'continued_cut_limit',
    'CutLimitReport',
    'cut_limit_estimate',
    'dim1_family',
    'dim1_limit',
    'continued_dim1_family',
    'continued_dim1_limit',
    'reindexed_family',
    'reindexed_limit',
    'extension_points',
    'surface_family',
    'surface_limit',
    'link_scale',
    'mu_profile',
    'g_dim1_model',
    'dim1_cone_metric',
    'g_dim1',
    'g_dim1_continued',
    'dim1_curvature',
    'dim1_cut_limit',
    'GlobalSmoothing',
    'ManifoldConeMetric',
    'manifold_cone_metric',
    'manifold_cone_from_params',
    'PatchedEvaluator',
    'patched_metric',
    'overlap_panel',
    'PinchResult',
    'pinch_circle',
    'pinch_surface',
    'SurfaceSmoothing',
    'smoothed_metric',
    'random_cone_points',
    'property_panel',
    'model_panel',
    'independence_panel',
    'surface_curvature_panel'
]
