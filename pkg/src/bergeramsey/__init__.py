"""Colorings of complete r-uniform hypergraphs avoiding monochromatic Berge subgraphs.

A Berge copy of a graph G inside a hypergraph is a bijection from the edges
of G onto distinct hyperedges such that every edge is contained in its image.
This package builds colorings without monochromatic Berge copies (lower-bound
certificates for Berge Ramsey numbers), detects and verifies Berge copies in
arbitrary colorings, and computes tiny exact Berge Ramsey numbers by
exhaustive search.
"""

from .core import (
    BergeWitness,
    ColoredHypergraph,
    FormatError,
    TargetGraph,
    WitnessError,
    graph_contains_clique,
    induced_subcoloring,
    iter_colex,
    make_target,
    rank_colex,
    read_brc1,
    read_witness,
    unrank_colex,
    write_brc1,
    write_witness,
)
from .geometry import ParallelClassFamily, affine_family, class_hits, smallest_prime_at_least
from .constructions import (
    DegenerateReductionError,
    InfeasibleColoringError,
    LayeredAssignment,
    LayeredCheckReport,
    LayeredInvariantError,
    ReductionTrace,
    SamplingExhaustedError,
    affine_coloring,
    assignment_coloring,
    check_layered,
    clique_numbers,
    color_graph,
    erdos_base,
    layered_step,
    lift_witness,
    read_assignment,
    read_trace,
    reduce_coloring,
    write_assignment,
    write_trace,
)
from .detection import (
    DetectionOutcome,
    ShadowReport,
    VerificationResult,
    brute_force_berge,
    find_berge,
    heavy_graph,
    heavy_to_berge,
    max_bipartite_matching,
    mono_free_colors,
    shadow_report,
    verify_witness,
)
from .search import (
    AvoidanceSearchResult,
    RamseyEntry,
    RamseyResult,
    find_avoiding_coloring,
    ramsey_exact,
)

__version__ = "0.1.0"

__all__ = [
    "AvoidanceSearchResult",
    "BergeWitness",
    "ColoredHypergraph",
    "DegenerateReductionError",
    "DetectionOutcome",
    "FormatError",
    "InfeasibleColoringError",
    "LayeredAssignment",
    "LayeredCheckReport",
    "LayeredInvariantError",
    "ParallelClassFamily",
    "RamseyEntry",
    "RamseyResult",
    "ReductionTrace",
    "SamplingExhaustedError",
    "ShadowReport",
    "TargetGraph",
    "VerificationResult",
    "WitnessError",
    "affine_coloring",
    "affine_family",
    "assignment_coloring",
    "brute_force_berge",
    "check_layered",
    "class_hits",
    "clique_numbers",
    "color_graph",
    "erdos_base",
    "find_avoiding_coloring",
    "find_berge",
    "graph_contains_clique",
    "heavy_graph",
    "heavy_to_berge",
    "induced_subcoloring",
    "iter_colex",
    "layered_step",
    "lift_witness",
    "make_target",
    "max_bipartite_matching",
    "mono_free_colors",
    "ramsey_exact",
    "rank_colex",
    "read_assignment",
    "read_brc1",
    "read_trace",
    "read_witness",
    "reduce_coloring",
    "shadow_report",
    "smallest_prime_at_least",
    "unrank_colex",
    "verify_witness",
    "write_assignment",
    "write_brc1",
    "write_trace",
    "write_witness",
]
