"""CSR graph storage, conversion and synthetic generators."""

from mhwalk.graph.csr import EdgeRef, Graph
from mhwalk.graph.convert import from_networkx, to_networkx
from mhwalk.graph.digest import graph_digest
from mhwalk.graph.synthetic import (
    blogcatalog_like,
    heavy_tailed_graph,
    parse_synthetic_spec,
    random_graph,
    star_graph,
    typed_random_graph,
)


def is_adjacent(graph: Graph, u: int, v: int) -> bool:
    """True iff ``v`` is in ``u``'s sorted neighbor slice."""
    return graph.is_adjacent(u, v)


__all__ = [
    "EdgeRef",
    "Graph",
    "is_adjacent",
    "graph_digest",
    "from_networkx",
    "to_networkx",
    "star_graph",
    "random_graph",
    "heavy_tailed_graph",
    "typed_random_graph",
    "blogcatalog_like",
    "parse_synthetic_spec",
]
