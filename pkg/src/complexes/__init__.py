"""All-right spherical complexes, their hyperbolic cones, patch systems and cubification."""
from src.complexes.complex import (
    AllRightComplex,
    ValidationReport,
    Violation,
    link_cycle,
    load_complex,
    simplicial_link,
    validate,
)
from src.complexes.cone import (
    ComplexPoint,
    ConePoint,
    PointCloud,
    angular_distance,
    cone_distance,
    extension_coordinates,
    face_list,
    in_cone_nbhd,
    link_cone_distance,
    sample_cone_points,
    sample_shell_points,
    sample_sphere_points,
)
from src.complexes.cubify import CubeComplex, cube_embedding, cubify, locate, validate_cubes
from src.complexes.generators import (
    builtin,
    circle_complex,
    cross_polytope,
    octahedron,
    polygon_suspension,
    simplex_complex,
    sixteen_cell,
)
from src.complexes.patches import PatchKind, PatchLabel, PatchSystem, classify_patch, dnp_panel, patch_panel
from src.complexes.rays import (
    RayKind,
    RayVerdict,
    absorption_is_stable,
    absorption_panel,
    ray_absorption,
    ray_classify,
    ray_member,
)

__all__ = [
    'AllRightComplex',
    'ValidationReport',
    'Violation',
    'link_cycle',
    'load_complex',
    'simplicial_link',
    'validate',
    'ComplexPoint',
    'ConePoint',
    'PointCloud',
    'angular_distance',
    'cone_distance',
    'extension_coordinates',
    'face_list',
    'in_cone_nbhd',
    'link_cone_distance',
    'sample_cone_points',
    'sample_shell_points',
    'sample_sphere_points',
    'CubeComplex',
    'cube_embedding',
    'cubify',
    'locate',
    'validate_cubes',
    'builtin',
    'circle_complex',
    'cross_polytope',
    'octahedron',
    'polygon_suspension',
    'simplex_complex',
    'sixteen_cell',
    'PatchKind',
    'PatchLabel',
    'PatchSystem',
    'classify_patch',
    'dnp_panel',
    'patch_panel',
    'RayKind',
    'RayVerdict',
    'absorption_is_stable',
    'absorption_panel',
    'ray_absorption',
    'ray_classify',
    'ray_member'
]
