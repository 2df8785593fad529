"""Readers for node-type ("node_id type_id") and edge-type ("src dst type_id") files."""

import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from mhwalk.errors import GraphValidationError
from mhwalk.graph.csr import Graph
from mhwalk.parsers.base import RecordParser

logger = logging.getLogger(__name__)


class NodeTypeParser(RecordParser[Graph]):
    """Attach node types to an already loaded graph.

    Type labels from the file are remapped to dense ids ``0 .. T - 1`` in
    ascending label order; the original labels are kept on the graph.
    """

    layout = "node_id type_id"

    def __init__(self, graph: Graph) -> None:
        super().__init__()
        self.graph = graph
        self._labels: Dict[int, int] = {}

    def parse_record(self, fields: List[str], line_number: int) -> None:
        if len(fields) != 2:
            raise self.error(f"expected 2 fields, got {len(fields)}", line_number)
        node = self.parse_node_id(fields[0], line_number)
        label = self.parse_node_id(fields[1], line_number)

        if node >= self.graph.node_count:
            raise GraphValidationError(
                f"{self.path}:{line_number}: unknown node id {node} "
                f"(graph has {self.graph.node_count} nodes)"
            )
        previous = self._labels.get(node)
        if previous is not None and previous != label:
            raise GraphValidationError(
                f"{self.path}:{line_number}: node {node} typed both {previous} and {label}"
            )
        self._labels[node] = label

    def finish(self) -> Graph:
        for node in range(self.graph.node_count):
            if node not in self._labels:
                raise GraphValidationError(f"{self.path}: node {node} has no type")

        raw = np.array([self._labels[v] for v in range(self.graph.node_count)], dtype=np.int64)
        labels, dense = np.unique(raw, return_inverse=True)
        if not np.array_equal(labels, np.arange(labels.size)):
            logger.info(f"Remapped node type labels {labels.tolist()} to 0..{labels.size - 1}")
        return self.graph.with_node_types(dense.astype(np.int64), type_labels=labels)


class EdgeTypeParser(RecordParser[Graph]):
    """Attach explicit edge types; unlisted arcs carry label 0.

    Labels over all arcs are remapped to dense ids in ascending label order,
    as node types are.
    """

    layout = "src dst type_id"

    def __init__(self, graph: Graph) -> None:
        super().__init__()
        self.graph = graph
        self._types: Dict[Tuple[int, int], int] = {}

    def parse_record(self, fields: List[str], line_number: int) -> None:
        if len(fields) != 3:
            raise self.error(f"expected 3 fields, got {len(fields)}", line_number)
        source = self.parse_node_id(fields[0], line_number)
        target = self.parse_node_id(fields[1], line_number)
        edge_type = self.parse_node_id(fields[2], line_number)

        n = self.graph.node_count
        if source >= n or target >= n or not self.graph.is_adjacent(source, target):
            raise GraphValidationError(
                f"{self.path}:{line_number}: no arc {source} -> {target} in the graph"
            )
        self._types[(source, target)] = edge_type
        if self.graph.symmetric:
            self._types[(target, source)] = edge_type

    def finish(self) -> Graph:
        raw = np.zeros(self.graph.arc_count, dtype=np.int64)
        for (source, target), edge_type in self._types.items():
            index = self.graph.arc_index(source, target)
            raw[self.graph.offsets[source] + index] = edge_type
        labels, dense = np.unique(raw, return_inverse=True)
        if not np.array_equal(labels, np.arange(labels.size)):
            logger.info(f"Remapped edge type labels {labels.tolist()} to 0..{labels.size - 1}")
        return self.graph.with_edge_types(dense.reshape(-1).astype(np.int64))


def load_node_types(path: Union[str, Path], graph: Graph) -> Graph:
    """Load node types for every node of ``graph``.

    Raises:
        GraphValidationError: A node is missing (the first uncovered node is
            named) or an unknown node id appears
    """
    typed = NodeTypeParser(graph).parse(path)
    logger.info(f"Loaded {typed.type_count} node types from {path}")
    return typed


def load_edge_types(path: Union[str, Path], graph: Graph) -> Graph:
    """Load explicit edge types; both directions are typed on symmetric graphs."""
    typed = EdgeTypeParser(graph).parse(path)
    logger.info(f"Loaded {typed.edge_type_count} edge types from {path}")
    return typed
