"""Simulated quantum query algorithms for parameterized graph problems.

Grover search is simulated exactly in its two-dimensional subspace, and
every oracle access is counted in a :class:`QueryLedger`.
"""

from .graph import Graph, parse_graph, format_graph
from .kmatching import quantum_k_matching, quantum_maximum_matching
from .oracle import ListOracle, MatrixOracle, QueryLedger
from .threshold import quantum_threshold_maximal_matching
from .vertex_cover import kernelize, list_model_vertex_cover, quantum_vertex_cover

__all__ = [
    "Graph", "ListOracle", "MatrixOracle", "QueryLedger", "format_graph", "kernelize",
    "list_model_vertex_cover", "parse_graph", "quantum_k_matching", "quantum_maximum_matching",
    "quantum_threshold_maximal_matching", "quantum_vertex_cover",
]

__version__ = "0.1.0"
