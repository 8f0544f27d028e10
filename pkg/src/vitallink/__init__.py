"""Folded-grid disjoint paths instances with a unique spanning solution:
construction, structural certificates and exact solving."""

from .engine import Budget, SolveReport, irrelevant_scan, solve, vital_check
from .errors import (
    CertificateError,
    DecompositionError,
    InputError,
    LinkageError,
    ResourceLimitError,
    VitalLinkError,
)
from .family import (
    DppInstance,
    GridCertificate,
    build_instance,
    canonical_linkage,
    control_instance,
    grid_certificate,
    non_grid_chords,
)
from .graph import (
    Graph,
    contract_edge,
    delete_vertex,
    is_k_connected,
    make_grid,
    min_vertex_cut,
    validate_linkage,
)
from .width import (
    TreeDecomposition,
    WidthReport,
    column_sweep_decomposition,
    exact_pathwidth,
    exact_treewidth,
    validate_decomposition,
    width_report,
)

__version__ = "0.1.0"

__all__ = [
    "Budget", "SolveReport", "irrelevant_scan", "solve", "vital_check",
    "CertificateError", "DecompositionError", "InputError", "LinkageError",
    "ResourceLimitError", "VitalLinkError",
    "DppInstance", "GridCertificate", "build_instance", "canonical_linkage",
    "control_instance", "grid_certificate", "non_grid_chords",
    "Graph", "contract_edge", "delete_vertex", "is_k_connected", "make_grid",
    "min_vertex_cut", "validate_linkage",
    "TreeDecomposition", "WidthReport", "column_sweep_decomposition",
    "exact_pathwidth", "exact_treewidth", "validate_decomposition", "width_report",
]
