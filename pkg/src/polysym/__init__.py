"""Compute linear and orthogonal symmetry groups of convex polytopes.

The pipeline colors the polytope's edge-graph with spectrally meaningful
vertex/edge weights, enumerates the colored graph's automorphisms, and
reconstructs each one as an explicit linear map on the ambient space.
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .geometry import (
    DualFace,
    EdgeGraph,
    FacetSystem,
    Polytope,
    complete_graph,
    dual_edge_face,
    edge_graph,
    enumerate_facets,
    load_polytope,
    make_polytope,
    relative_volume,
    volume_generalized_dual,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "Polytope",
    "FacetSystem",
    "EdgeGraph",
    "DualFace",
    "load_polytope",
    "make_polytope",
    "enumerate_facets",
    "edge_graph",
    "dual_edge_face",
    "relative_volume",
    "volume_generalized_dual",
    "complete_graph",
]
