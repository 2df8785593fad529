"""Synthetic graph generators for tests, benchmarks and desk-scale runs."""

import logging
from typing import Optional

import networkx as nx
import numpy as np

from mhwalk.errors import GraphValidationError
from mhwalk.graph.convert import from_networkx
from mhwalk.graph.csr import Graph

logger = logging.getLogger(__name__)

# Node and arc counts of the BlogCatalog network; arcs count both directions.
BLOGCATALOG_NODES = 10_300
BLOGCATALOG_ARCS = 668_000


def star_graph(leaves: int) -> Graph:
    """Symmetric star: hub 0 connected to ``leaves`` leaf nodes."""
    return from_networkx(nx.star_graph(leaves))


def random_graph(node_count: int, edge_count: int, seed: Optional[int] = None) -> Graph:
    """Symmetric G(n, m) random graph with unit weights."""
    return from_networkx(nx.gnm_random_graph(node_count, edge_count, seed=seed))


def heavy_tailed_graph(node_count: int, attach: int, seed: Optional[int] = None) -> Graph:
    """Symmetric Barabasi-Albert graph; its degree profile is heavy-tailed."""
    return from_networkx(nx.barabasi_albert_graph(node_count, attach, seed=seed))


def typed_random_graph(
    node_count: int,
    edge_count: int,
    type_count: int,
    seed: Optional[int] = None,
    weighted: bool = False,
) -> Graph:
    """Symmetric G(n, m) graph with uniformly drawn node types.

    Args:
        node_count: Number of nodes
        edge_count: Number of undirected edges
        type_count: Number of node types
        seed: Generator seed
        weighted: Draw edge weights uniformly from [0.5, 4.0)

    Returns:
        Typed symmetric graph
    """
    rng = np.random.default_rng(seed)
    nx_graph = nx.gnm_random_graph(node_count, edge_count, seed=seed)
    if weighted:
        for u, v in nx_graph.edges():
            nx_graph[u][v]["weight"] = float(rng.uniform(0.5, 4.0))
    graph = from_networkx(nx_graph, node_type=None)
    types = rng.integers(type_count, size=node_count)
    # Every type id must occur so that the ids stay dense.
    types[: min(type_count, node_count)] = np.arange(min(type_count, node_count))
    return graph.with_node_types(types)


def blogcatalog_like(seed: Optional[int] = None) -> Graph:
    """Random graph at BlogCatalog scale (10.3K nodes, mean degree ~64.9)."""
    return random_graph(BLOGCATALOG_NODES, BLOGCATALOG_ARCS // 2, seed=seed)


def parse_synthetic_spec(spec: str, seed: Optional[int] = None) -> Graph:
    """Build a graph from a compact description.

    Supported forms: ``star:LEAVES``, ``gnm:N:M``, ``ba:N:ATTACH``,
    ``typed:N:M:TYPES`` and ``blogcatalog``.

    Args:
        spec: Graph description
        seed: Generator seed for the random families

    Returns:
        Generated graph
    """
    kind, *args = spec.strip().lower().split(":")
    try:
        numbers = [int(arg) for arg in args]
    except ValueError as e:
        raise GraphValidationError(f"Invalid synthetic graph spec '{spec}'") from e

    expected = {"star": 1, "gnm": 2, "ba": 2, "typed": 3, "blogcatalog": 0}
    if kind not in expected or len(numbers) != expected[kind]:
        raise GraphValidationError(
            f"Invalid synthetic graph spec '{spec}' "
            "(use star:L, gnm:N:M, ba:N:A, typed:N:M:T or blogcatalog)"
        )

    if kind == "star":
        graph = star_graph(numbers[0])
    elif kind == "gnm":
        graph = random_graph(numbers[0], numbers[1], seed=seed)
    elif kind == "ba":
        graph = heavy_tailed_graph(numbers[0], numbers[1], seed=seed)
    elif kind == "typed":
        graph = typed_random_graph(numbers[0], numbers[1], numbers[2], seed=seed)
    else:
        graph = blogcatalog_like(seed=seed)

    logger.info(f"Generated synthetic {spec}: {graph}")
    return graph
