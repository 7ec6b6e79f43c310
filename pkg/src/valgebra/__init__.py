"""valgebra: exact valuation algebra for polytopes, cones and their germs.

Convex polytopes and cones with exact rational arithmetic; constructible
elements of the polytope and cone groups; the interior and duality
involutions with the boundary operator; multiplicative invariants and their
composition product (conical and dual volumes, intrinsic volumes, edge
tensors, frame invariants); the graded rings of Euclidean classes; and the
two-torsion homology of the boundary complex.
"""

from .cellcomplex import (
    CellComplex,
    build_complex,
    complex_from_cell,
    is_refinement,
    overlay,
    refine_common,
    triangulate,
    validate_complex,
)
from .cone import Cone, cone_faces, dual_cone
from .element import (
    AffineMap,
    CoordinateProjection,
    Element,
    add,
    closed_expansion,
    closure_coefficients,
    delta,
    dilate,
    embed_element,
    equals,
    euler_char,
    external_product,
    from_cone,
    from_polytope,
    indicator,
    interior_involution,
    pushforward,
    scale,
    subtract,
    support_dim,
    value_at,
    zero_element,
)
from .homology import AbelianGroup, ChainBasis, delta_matrix, homology, homology_table, smith_normal_form
from .jsonio import dump_geometry, dump_value, load_geometry
from .metric import (
    AbstractEuclideanComplex,
    MetricConicalComplex,
    cube_surface,
    flat_torus,
    octahedron_surface,
    projective_plane_rp6,
    surface_gauss_defect_sum,
)
from .named import (
    AngleSpec,
    NamedExpr,
    alpha,
    delta_l,
    e2_coords,
    membership_plus,
    parse_expr,
    realize,
    realize_e2,
    verify_tables,
)
from .polytope import Polytope, minkowski_sum
from .ringvalue import (
    Int,
    Poly,
    Prod,
    Rat,
    Real,
    RingValue,
    Tensor,
    add as ring_add,
    collapse,
    detect_rational,
    eq_within,
    mul as ring_mul,
    neg as ring_neg,
    normalize_tensor,
    swap,
)
from .solid import (
    McOptions,
    SolidAngle,
    conical_volume,
    dual_volume,
    dualize,
    epsilon,
    local_euler,
    solid_angle_cone,
)
from .star import (
    Ambient,
    Obj,
    build,
    eval_convex,
    eval_element,
    frame_invariant_direct,
    frame_star_coefficient,
    identity,
    inverse,
    scale as scale_invariant,
    star,
)
from .suites import RunConfig, run_suite

__version__ = "0.1.0"

# normal cone and germ operations live on the geometry objects themselves:
#   Polytope.normal_cone / Cone.normal_cone / AbstractEuclideanComplex.germ_cone


def germ_cone(complex_: AbstractEuclideanComplex, vertex):
    """Vertex germ of an abstract Euclidean complex (metric conical complex)."""
    return complex_.germ_cone(vertex)


def normal_cone(sigma, parent):
    """Normal cone of a face/cell inside a convex parent."""
    return parent.normal_cone(sigma)
