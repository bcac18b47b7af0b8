"""Toolkit for near-matchstick graphs: plane drawings with unit-length
edges plus a small set of deliberately off-unit "red" edges.

Covers format parsing, geometric verification, infinitesimal rigidity,
least-squares relaxation, flex continuation, boundary/frame/symmetry
analysis, a bundled graph corpus, SVG export, a CLI, and an HTTP service.
"""

from .analysis import (FrameReport, SymmetryReport, detect_symmetry,
                       frame_triangles, outer_boundary)
from .geometry import (COLLINEAR_OVERLAP, DISJOINT, ENDPOINT_TOUCH,
                       INTERIOR_TOUCH, PROPER_CROSS, IntersectionClass,
                       RigidTransform, classify_segments, distance,
                       point_segment_distance, rigid_align)
from .model import (Graph, GraphFormatError, ToleranceProfile, edge_lengths,
                    degree_sequence, graph_from_dict, graph_to_dict,
                    make_graph, parse_graph, serialize_graph)
from .relax import (ALL_UNIT, PRESERVE_RED, FlexContinuationConfig,
                    RelaxConfig, RelaxResult, flex_continuation, jacobian,
                    relax, residuals)
from .rigidity import (RigidityReport, analyze_rigidity, numeric_rank,
                       rigidity_matrix, trivial_motions)
from .svg import SvgStyle, export_svg
from .verifier import (RuleReport, VerificationReport, check_coincidence,
                       check_construction_rules, check_crossings,
                       check_regular, verify)

__version__ = "0.1.0"

__all__ = [
    "ALL_UNIT", "COLLINEAR_OVERLAP", "DISJOINT", "ENDPOINT_TOUCH",
    "FlexContinuationConfig", "FrameReport", "Graph", "GraphFormatError",
    "INTERIOR_TOUCH", "IntersectionClass", "PRESERVE_RED", "PROPER_CROSS",
    "RelaxConfig", "RelaxResult", "RigidTransform", "RigidityReport",
    "RuleReport", "SvgStyle", "SymmetryReport", "ToleranceProfile",
    "VerificationReport", "analyze_rigidity", "check_coincidence",
    "check_construction_rules", "check_crossings", "check_regular",
    "classify_segments", "degree_sequence", "detect_symmetry", "distance",
    "edge_lengths", "export_svg", "flex_continuation", "frame_triangles",
    "graph_from_dict", "graph_to_dict", "jacobian", "make_graph",
    "numeric_rank", "outer_boundary", "parse_graph", "point_segment_distance",
    "relax", "residuals", "rigid_align", "rigidity_matrix",
    "serialize_graph", "trivial_motions", "verify",
]
