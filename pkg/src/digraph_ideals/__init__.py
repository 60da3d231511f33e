"""Cycles, acyclicity and covers of digraphs read off binomial ideals,
with an exact Groebner basis engine over the rationals."""

from .analysis import (
    classify_generators,
    cycle_space_dimension,
    diedge_ideal,
    divertex_ideal,
    is_dag,
    is_directly_bipartite,
    is_upd,
    linear_edge_ideal,
    minimal_vertex_covers,
    source_sink_covers,
    symmetric_difference_cycle,
    undirected_cycles_via_orientation,
    vertex_ideal,
)
from .graphs import Digraph, UGraph, build_h_graph, build_k_graph, enumerate_cycles_oracle
from .groebner import IdealBasis, buchberger, eliminate, is_groebner, reduced_groebner, saturate
from .poly import Polynomial, TermOrder, VarTable
from .toric import IntMatrix, integer_kernel_basis, toric_by_elimination, toric_by_saturation

__version__ = "0.1.0"
