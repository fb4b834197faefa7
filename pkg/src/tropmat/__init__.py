"""Tropical oriented matroids and mixed subdivisions of dilated simplices."""

from .axioms import (
    AxiomReport,
    TypeCollection,
    check_boundary,
    check_comparability,
    check_elimination,
    check_surrounding,
    check_tom,
    classify,
    eliminate_search,
    region_topes,
    tom_contraction,
    tom_deletion,
)
from .comparability import (
    CycleWitness,
    MixedMultigraph,
    comparability_graph,
    is_acyclic,
    refinement_witness,
)
from .duality import (
    check_arrangement_axioms,
    check_slice_structure,
    dual_complex,
    pseudohyperplane,
)
from .mixsd import (
    MixedSubdivision,
    cell_vertex_points,
    embed_tope,
    faces,
    is_fine,
    is_nice_type,
    mixsd_contraction,
    mixsd_deletion,
    normalized_volume,
    reconstruct_from_topes,
    tom_to_mixsd,
    validate_mixsd,
)
from .ndtype import (
    EmptyPosition,
    NdType,
    OrderedPartition,
    arrangement_dim,
    is_bounded,
    join,
    leq,
    make_type,
    meet,
    minkowski_dim,
    parse_type,
    refine,
    total_refinements,
)
from .realize import WeightMatrix, is_generic, point_type, realizable_tom, type_feasible

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CycleWitness",
    "EmptyPosition",
    "MixedMultigraph",
    "MixedSubdivision",
    "NdType",
    "OrderedPartition",
    "TypeCollection",
    "WeightMatrix",
    "arrangement_dim",
    "cell_vertex_points",
    "check_arrangement_axioms",
    "check_boundary",
    "check_comparability",
    "check_elimination",
    "check_slice_structure",
    "check_surrounding",
    "check_tom",
    "classify",
    "comparability_graph",
    "dual_complex",
    "eliminate_search",
    "embed_tope",
    "faces",
    "is_acyclic",
    "is_bounded",
    "is_fine",
    "is_generic",
    "is_nice_type",
    "join",
    "leq",
    "make_type",
    "meet",
    "minkowski_dim",
    "mixsd_contraction",
    "mixsd_deletion",
    "normalized_volume",
    "parse_type",
    "point_type",
    "pseudohyperplane",
    "realizable_tom",
    "reconstruct_from_topes",
    "refine",
    "refinement_witness",
    "region_topes",
    "tom_contraction",
    "tom_deletion",
    "tom_to_mixsd",
    "total_refinements",
    "type_feasible",
    "validate_mixsd",
]
