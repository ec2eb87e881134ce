"""Frames generated by graph Laplacians, their duals, and erasure optimality."""
from .erasure import (
    ErasureReport, MeasureParams, bounds, erasure_operator_norm, erasure_spectral_radius,
    error_submatrix, lemma35_min, opnorm_measure_O1, spectral_measure,
    two_erasure_closed_form)
from .frame import (
    DualPair, Frame, canonical_dual, find_unitary_intertwiner, frame_from_graph,
    frame_from_vectors, frame_operator, gramian, is_tight, make_frame,
    parseval_normalize, verify_dual)
from .graph import Graph, laplacian, parse_edge_list
from .linalg import (
    EigenDecomposition, general_eigenvalues, null_space_basis, operator_norm,
    power_mean_check, spectral_radius, sym_eig)
from .optimality import (
    classify, closed_form_E1_canonical, dual_family, dual_from_parameter,
    search_optimal_dual, uniformity)

__version__ = "0.1.0"
