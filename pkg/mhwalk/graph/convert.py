"""Conversion between CSR graphs and networkx graphs."""

from typing import Optional

import networkx as nx
import numpy as np

from mhwalk.errors import GraphValidationError
from mhwalk.graph.csr import Graph


def from_networkx(
    nx_graph: nx.Graph,
    weight: Optional[str] = "weight",
    node_type: Optional[str] = "type",
) -> Graph:
    """Build a CSR graph from a networkx graph with integer node labels.

    Undirected networkx graphs become symmetric graphs. Node attributes named
    ``node_type`` become node types when every node carries one.

    Args:
        nx_graph: Graph whose nodes are the integers ``0 .. n - 1``
        weight: Edge attribute holding the weight (unit weight when missing)
        node_type: Node attribute holding the type id

    Returns:
        Equivalent CSR graph
    """
    node_count = nx_graph.number_of_nodes()
    if set(nx_graph.nodes()) != set(range(node_count)):
        raise GraphValidationError("networkx node labels must be the integers 0..n-1")

    edges = list(nx_graph.edges(data=True))
    sources = np.fromiter((u for u, _, _ in edges), dtype=np.int64, count=len(edges))
    targets = np.fromiter((v for _, v, _ in edges), dtype=np.int64, count=len(edges))
    weights = np.fromiter(
        (float(data.get(weight, 1.0)) if weight else 1.0 for _, _, data in edges),
        dtype=np.float64,
        count=len(edges),
    )
    graph = Graph.from_arcs(
        node_count,
        sources,
        targets,
        weights,
        symmetrize=not nx_graph.is_directed(),
    )

    if node_type is not None:
        labels = nx.get_node_attributes(nx_graph, node_type)
        if labels and len(labels) == node_count:
            types = np.array([labels[v] for v in range(node_count)], dtype=np.int64)
            graph = graph.with_node_types(types)
    return graph


def to_networkx(graph: Graph) -> nx.DiGraph:
    """Convert a CSR graph to a weighted networkx ``DiGraph``."""
    nx_graph = nx.DiGraph()
    nx_graph.add_nodes_from(range(graph.node_count))
    if graph.node_types is not None:
        nx.set_node_attributes(
            nx_graph, {v: int(t) for v, t in enumerate(graph.node_types)}, "type"
        )
    sources = np.repeat(np.arange(graph.node_count), graph.degrees())
    nx_graph.add_weighted_edges_from(
        zip(sources.tolist(), graph.neighbors.tolist(), graph.weights.tolist())
    )
    return nx_graph
