"""Entanglement percolation on 2D lattice quantum networks.

Builds square, triangular and hexagonal lattices of identical two-qubit
pure states, derives an entangled link for every node pair from the
shortest paths between them (swapping in series, distillation in
parallel), samples probabilistic singlet conversion, and locates the
percolation transition by finite-size scaling.
"""

from .analysis import (
    ScalingFit,
    ThresholdEstimate,
    collapse_cost,
    crossing_threshold,
    fit_exponents,
)
from .entanglement import (
    concurrence_of_theta,
    gcp_pair_concurrence,
    parallel_concurrence,
    series_concurrence,
    singlet_prob_of_concurrence,
    singlet_prob_of_theta,
    theta_of_concurrence,
)
from .lattice import KINDS, Lattice, build_lattice
from .paths import PathSummary, PathTable, all_pairs_paths, bfs_path_counts, shortest_square, shortest_triangular
from .percolation import (
    PROTOCOLS,
    PercolationCurve,
    ProbabilisticEdgeSet,
    build_edge_probs,
    giant_fraction,
    read_curve,
    sweep,
    write_curve,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "PROTOCOLS",
    "Lattice",
    "PathSummary",
    "PathTable",
    "PercolationCurve",
    "ProbabilisticEdgeSet",
    "ScalingFit",
    "ThresholdEstimate",
    "all_pairs_paths",
    "bfs_path_counts",
    "build_edge_probs",
    "build_lattice",
    "collapse_cost",
    "concurrence_of_theta",
    "crossing_threshold",
    "fit_exponents",
    "gcp_pair_concurrence",
    "giant_fraction",
    "parallel_concurrence",
    "read_curve",
    "series_concurrence",
    "shortest_square",
    "shortest_triangular",
    "singlet_prob_of_concurrence",
    "singlet_prob_of_theta",
    "sweep",
    "theta_of_concurrence",
    "write_curve",
]
