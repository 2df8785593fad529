"""Content digest identifying a graph in run manifests."""

import hashlib
from typing import Any, Dict

from mhwalk.graph.csr import Graph


def graph_digest(graph: Graph) -> Dict[str, Any]:
    """Sizes plus a SHA-256 over the CSR arrays and type labels."""
    sha = hashlib.sha256()
    sha.update(str(graph.node_count).encode("ascii"))
    for array in (graph.offsets, graph.neighbors, graph.weights):
        sha.update(array.tobytes())
    if graph.node_types is not None:
        sha.update(b"node_types")
        sha.update(graph.node_types.tobytes())
    if graph.edge_types is not None and not graph.edge_types_derived:
        sha.update(b"edge_types")
        sha.update(graph.edge_types.tobytes())
    return {
        "nodes": graph.node_count,
        "arcs": graph.arc_count,
        "types": graph.type_count,
        "symmetric": graph.symmetric,
        "checksum": sha.hexdigest(),
    }
