"""Exact polytope combinatorics for the wedge and perturbed-wedge constructions."""

from .analysis import (
    PathRecord,
    PolytopeGraph,
    SimplicityReport,
    SpindleCertificate,
    diameter,
    distance,
    find_spindles,
    graph,
    make_path,
    nonrevisiting_search,
    revisit_check,
    simplicity,
)
from .constructions import (
    NaturalImageMap,
    PerturbationReport,
    PerturbationSpec,
    WedgeResult,
    choose_epsilon,
    perturb_facet,
    perturbed_wedge,
    two_point_suspension,
    wedge,
)
from .core import (
    HRep,
    IncidenceMatrix,
    Polytope,
    PolytopeError,
    PreconditionError,
    VRep,
    facet_vertex_count,
    incidence,
    incidence_isomorphic,
    polar_dual,
    validate,
)
from .enumeration import facets_from_v, remove_redundant, vertices_from_h
from .exact import RatMatrix, affine_dim, parse_rational, rank

__version__ = "0.1.0"
