"""Uniform random graphs with a given degree sequence and the empirical
study of their symmetry/asymmetry phase transition."""

from .degseq import DegreeSequence, ThresholdDiagnostics, diagnostics, statistics, validate
from .graphs import Graph, connected_components, induced_subgraph, is_connected, two_core
from .aut import (
    AutReport,
    ParamVector,
    Permutation,
    apply_permutation,
    find_nontrivial_automorphism,
    group_order,
    parameter_vector,
)
from .moments import MomentEstimates, moment_estimates
from .motifs import MotifReport, motif_report
from .oracle import Realizations, enumerate_realizations, exact_expectation, exact_p_symmetric
from .sampler import Auto, Rejection, SwitchChain, derive_rng, sample, sample_many

__version__ = "0.1.0"

__all__ = [
    "DegreeSequence",
    "ThresholdDiagnostics",
    "validate",
    "statistics",
    "diagnostics",
    "Graph",
    "connected_components",
    "is_connected",
    "two_core",
    "induced_subgraph",
    "Permutation",
    "AutReport",
    "ParamVector",
    "apply_permutation",
    "find_nontrivial_automorphism",
    "group_order",
    "parameter_vector",
    "MotifReport",
    "motif_report",
    "MomentEstimates",
    "moment_estimates",
    "Realizations",
    "enumerate_realizations",
    "exact_p_symmetric",
    "exact_expectation",
    "Rejection",
    "SwitchChain",
    "Auto",
    "sample",
    "sample_many",
    "derive_rng",
]
