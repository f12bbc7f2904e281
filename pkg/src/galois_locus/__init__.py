"""Outer Galois points of plane curves over finite fields."""

from .errors import GaloisLocusError
from .field import FiniteField, FieldElement, field_make, parse_field
from .poly import Poly, PolyFactorization, poly_factor, poly_gcd, poly_mth_root_shifted, roots_of_unity
from .mpoly import MPoly
from .expr import parse_form, parse_map, parse_point
from .geometry import (
    PlaneCurve,
    ProjLine,
    ProjPoint,
    ProjTransform,
    apply_transform,
    curve_make,
    fiber_polynomial,
    line_intersection_multiplicity,
    move_point_to_vertex,
    multiplicity,
    singular_points,
    total_inflexions,
)
from .funcfield import CurveModel, FunctionFieldElement, curve_model
from .maps import (
    CurveMap,
    MapGroup,
    GroupStructure,
    ProductReport,
    group_closure,
    group_structure,
    map_compose,
    map_make,
    orbit_divisor_equal,
    preserves_fibers,
    product_analysis,
)
from .detector import (
    GaloisVerdict,
    ScanReport,
    certify_galois,
    linear_fiber_automorphisms,
    monte_carlo_galois,
    sample_fiber_patterns,
    scan_outer_galois_points,
)
from .kummer import branch_structure, kummer_data, kummer_genus, places_over, rh_consistency
from .families import FamilySpec, family_curve, parse_family
from .pipelines import PipelineReport, pipeline_hermitian, pipeline_prop2, pipeline_theorem1

__version__ = "0.1.0"
