"""Exact null spaces of bipartite quantum-walk distinguishability operators.

For two labeled connected graphs of equal order, ``W = U_i(t) (x) U_j(t') -
U_j(t') (x) U_i(t)`` with ``U(t) = exp(-i t L)``.  This package computes the
states annihilated by W for all times in exact arithmetic, groups the
results for every pair of graphs of one order, and checks them against a
floating-point walk simulator.
"""
from qwdist.distinguish import PairNullResult, diag_null, pair_null, verify_subset_relations
from qwdist.exact import RationalMatrix, Subspace, contains, intersect, kernel, kron, to_uniform_sum_basis, vec_index
from qwdist.graphs import LabeledGraph, complete_graph, enumerate_labeled_connected, is_path_graph, laplacian
from qwdist.kernels import BACKEND
from qwdist.lattice import LatticeReport, ZoneRecord, classify, degeneracy_table, diagonal_degeneracy, export

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LabeledGraph",
    "LatticeReport",
    "PairNullResult",
    "RationalMatrix",
    "Subspace",
    "ZoneRecord",
    "classify",
    "complete_graph",
    "contains",
    "degeneracy_table",
    "diag_null",
    "diagonal_degeneracy",
    "enumerate_labeled_connected",
    "export",
    "intersect",
    "is_path_graph",
    "kernel",
    "kron",
    "laplacian",
    "pair_null",
    "to_uniform_sum_basis",
    "vec_index",
    "verify_subset_relations",
]
