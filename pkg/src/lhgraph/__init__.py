"""Locally Hamiltonian multigraphs, embedding schemes and sphere triangulations."""
from .embedding import (
    EmbeddingScheme,
    FacialWalk,
    Orientation,
    euler_genus,
    face_sets_equal,
    gauge_flip,
    is_edge_maximal,
    is_sphere_triangulation,
    normalize_gauge,
    rotation_orientation_match,
    trace_faces,
)
from .enumeration import (
    EnumerationRange,
    VerificationReport,
    enumerate_graphs,
    enumerate_schemes,
    verify_lemma1,
    verify_lh_bound,
    verify_loop_bound,
    verify_maximal_embeddings,
)
from .errors import LHGraphError, ParseError, ReconstructionFailed, ValidationError
from .flowers import Attachment, FlowerDecomposition, build_flower, flower_scheme, is_flower
from .hamiltonian import (
    HamiltonianCertificate,
    HamiltonianOrdering,
    hamiltonian_ordering,
    is_locally_hamiltonian,
    neighborhood_hamiltonian_cycles,
)
from .io import parse_document, parse_input, to_dot
from .multigraph import Dart, Multigraph, build_graph, canonical_code, is_simple_vertex
from .triangulation import (
    ReconstructionTrace,
    lemma1_candidates,
    oracle_embed,
    reconstruct_triangulation,
    replay_trace,
    side_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
