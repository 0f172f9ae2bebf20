"""Exact Ehrhart delta vectors for lattice polytopes.

Everything is integer or rational arithmetic end to end: polytopes carry
exact V- and H-representations, delta vectors come from dilate counting,
parallelepipeds get a closed-form delta via their open-box censuses, and
boundary triangulations recover the delta vector of a reflexive polytope
from box polynomials and link h-polynomials.
"""

from .ehrhart import (
    DeltaReport,
    a_poly,
    build_report,
    check_interior_chain,
    delta_from_counts,
    delta_vector,
    eulerian,
    is_alternatingly_increasing,
    is_symmetric,
    is_unimodal,
    product_with_segment,
)
from .parallelepiped import (
    BoxCensus,
    ParallelepipedSpec,
    box_census,
    box_points,
    closed_count,
    closed_parallelepiped,
    delta_by_counting,
    parallelepiped_delta,
    parallelepiped_is_reflexive_translate,
    spec_from_vectors,
)
from .polytope import (
    LatticePolytope,
    ScaleGuardError,
    contains,
    count_lattice_points,
    cross_polytope,
    from_points,
    hypercube,
    interior_count,
    is_integrally_closed,
    is_reflexive,
    is_translate_of_reflexive,
    lattice_points,
    reflexive_simplex,
    standard_simplex,
)
from .triangulation import (
    PointConfiguration,
    Triangulation,
    box_poly,
    config_from_points,
    invalidity,
    is_box_unimodal,
    is_regular,
    link_h,
    make_triangulation,
    mp_delta,
    pulling_triangulation,
    simplex_census,
    validate,
)

__all__ = [
    "BoxCensus",
    "DeltaReport",
    "LatticePolytope",
    "ParallelepipedSpec",
    "PointConfiguration",
    "ScaleGuardError",
    "Triangulation",
    "a_poly",
    "box_census",
    "box_points",
    "box_poly",
    "build_report",
    "check_interior_chain",
    "closed_count",
    "closed_parallelepiped",
    "config_from_points",
    "contains",
    "count_lattice_points",
    "cross_polytope",
    "delta_by_counting",
    "delta_from_counts",
    "delta_vector",
    "eulerian",
    "from_points",
    "hypercube",
    "interior_count",
    "invalidity",
    "is_alternatingly_increasing",
    "is_box_unimodal",
    "is_integrally_closed",
    "is_reflexive",
    "is_regular",
    "is_symmetric",
    "is_translate_of_reflexive",
    "is_unimodal",
    "lattice_points",
    "link_h",
    "make_triangulation",
    "mp_delta",
    "parallelepiped_delta",
    "parallelepiped_is_reflexive_translate",
    "product_with_segment",
    "pulling_triangulation",
    "reflexive_simplex",
    "simplex_census",
    "spec_from_vectors",
    "standard_simplex",
    "validate",
]
