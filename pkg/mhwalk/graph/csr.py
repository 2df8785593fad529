"""Compressed sparse row storage for walk graphs."""

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy import sparse

from mhwalk.errors import GraphValidationError

logger = logging.getLogger(__name__)


class EdgeRef(NamedTuple):
    """Handle for the arc ``source -> neighbors[offsets[source] + neighbor_index]``."""

    source: int
    neighbor_index: int


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(eq=False)
class Graph:
    """Immutable CSR adjacency with optional node and edge type labels.

    Neighbor slices are sorted ascending by node id, so adjacency tests and
    arc lookups are binary searches over a single slice.

    Attributes:
        node_count: Number of nodes; ids are ``0 .. node_count - 1``
        offsets: Slice boundaries, length ``node_count + 1``
        neighbors: Concatenated neighbor slices
        weights: Non-negative weight per arc, parallel to ``neighbors``
        node_types: Dense type id per node, or None for untyped graphs
        edge_types: Type id per arc, or None (derived from node types when possible)
        symmetric: Every arc has its reverse arc
        type_labels: Original type label for each dense node type id
        edge_types_derived: Edge types were computed from node type pairs
    """

    node_count: int
    offsets: np.ndarray
    neighbors: np.ndarray
    weights: np.ndarray
    node_types: Optional[np.ndarray] = None
    edge_types: Optional[np.ndarray] = None
    symmetric: bool = False
    type_labels: Optional[np.ndarray] = None
    edge_types_derived: bool = False
    sink_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.offsets = _readonly(np.asarray(self.offsets, dtype=np.int64))
        self.neighbors = _readonly(np.asarray(self.neighbors, dtype=np.int64))
        self.weights = _readonly(np.asarray(self.weights, dtype=np.float64))
        if self.node_types is not None:
            self.node_types = _readonly(np.asarray(self.node_types, dtype=np.int64))
        if self.edge_types is not None:
            self.edge_types = _readonly(np.asarray(self.edge_types, dtype=np.int64))
        self._validate()

        degrees = np.diff(self.offsets)
        positive = np.zeros(self.node_count, dtype=bool)
        if self.arc_count:
            sources = np.repeat(np.arange(self.node_count), degrees)
            np.logical_or.at(positive, sources, self.weights > 0)
        self.sink_nodes = _readonly(np.flatnonzero((degrees > 0) & ~positive))
        if self.sink_nodes.size:
            logger.debug(f"{self.sink_nodes.size} nodes have only zero-weight arcs")

    def _validate(self) -> None:
        n = self.node_count
        if n < 0:
            raise GraphValidationError(f"node_count must be non-negative, got {n}")
        if self.offsets.shape != (n + 1,):
            raise GraphValidationError(
                f"offsets must have length {n + 1}, got {self.offsets.shape[0]}"
            )
        if self.offsets[0] != 0 or self.offsets[-1] != self.neighbors.shape[0]:
            raise GraphValidationError("offsets must start at 0 and end at the arc count")
        if np.any(np.diff(self.offsets) < 0):
            raise GraphValidationError("offsets must be non-decreasing")
        if self.weights.shape != self.neighbors.shape:
            raise GraphValidationError("weights must be parallel to neighbors")
        if self.neighbors.size and (self.neighbors.min() < 0 or self.neighbors.max() >= n):
            raise GraphValidationError("neighbor ids out of range")
        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            raise GraphValidationError("weights must be finite and non-negative")

        # Strictly increasing within each slice: every step that does not
        # cross a slice boundary must go up.
        if self.neighbors.size > 1:
            steps = np.diff(self.neighbors)
            boundary = np.zeros(self.neighbors.size - 1, dtype=bool)
            starts = self.offsets[1:-1]
            starts = starts[(starts > 0) & (starts < self.neighbors.size)]
            boundary[starts - 1] = True
            if np.any((steps <= 0) & ~boundary):
                raise GraphValidationError("neighbor slices must be strictly increasing")

        if self.node_types is not None and self.node_types.shape != (n,):
            raise GraphValidationError(f"node_types must have length {n}")
        if self.edge_types is not None and self.edge_types.shape != self.neighbors.shape:
            raise GraphValidationError("edge_types must be parallel to neighbors")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_arcs(
        cls,
        node_count: int,
        sources: np.ndarray,
        targets: np.ndarray,
        weights: Optional[np.ndarray] = None,
        symmetrize: bool = False,
    ) -> "Graph":
        """Build a graph from parallel arc arrays.

        Duplicate arcs collapse into one arc whose weight is the sum of the
        duplicates. With ``symmetrize`` every non-loop arc is also inserted
        reversed with the same weight.

        Args:
            node_count: Number of nodes
            sources: Arc source ids
            targets: Arc target ids
            weights: Arc weights (unit weights when omitted)
            symmetrize: Insert every arc in both directions

        Returns:
            Graph with sorted neighbor slices
        """
        sources = np.asarray(sources, dtype=np.int64)
        targets = np.asarray(targets, dtype=np.int64)
        if weights is None:
            weights = np.ones(sources.shape[0], dtype=np.float64)
        weights = np.asarray(weights, dtype=np.float64)
        if np.any(weights < 0):
            raise GraphValidationError("arc weights must be non-negative")

        if symmetrize:
            loops = sources == targets
            sources, targets = (
                np.concatenate([sources, targets[~loops]]),
                np.concatenate([targets, sources[~loops]]),
            )
            weights = np.concatenate([weights, weights[~loops]])

        matrix = sparse.coo_matrix(
            (weights, (sources, targets)), shape=(node_count, node_count)
        ).tocsr()
        matrix.sum_duplicates()
        matrix.sort_indices()

        symmetric = symmetrize or _pattern_is_symmetric(matrix)
        return cls(
            node_count=node_count,
            offsets=matrix.indptr.astype(np.int64),
            neighbors=matrix.indices.astype(np.int64),
            weights=matrix.data.astype(np.float64),
            symmetric=symmetric,
        )

    def with_node_types(
        self, node_types: np.ndarray, type_labels: Optional[np.ndarray] = None
    ) -> "Graph":
        """Return a copy carrying dense node types.

        When the graph has no explicit edge types, arc types are derived as
        ``type(source) * type_count + type(target)``.
        """
        node_types = np.asarray(node_types, dtype=np.int64)
        edge_types = self.edge_types
        derived = self.edge_types_derived
        if edge_types is None or derived:
            type_count = int(node_types.max()) + 1 if node_types.size else 0
            sources = np.repeat(np.arange(self.node_count), np.diff(self.offsets))
            edge_types = node_types[sources] * type_count + node_types[self.neighbors]
            derived = True
        return Graph(
            node_count=self.node_count,
            offsets=self.offsets,
            neighbors=self.neighbors,
            weights=self.weights,
            node_types=node_types,
            edge_types=edge_types,
            symmetric=self.symmetric,
            type_labels=type_labels,
            edge_types_derived=derived,
        )

    def with_edge_types(self, edge_types: np.ndarray) -> "Graph":
        """Return a copy carrying explicit per-arc edge types."""
        return Graph(
            node_count=self.node_count,
            offsets=self.offsets,
            neighbors=self.neighbors,
            weights=self.weights,
            node_types=self.node_types,
            edge_types=np.asarray(edge_types, dtype=np.int64),
            symmetric=self.symmetric,
            type_labels=self.type_labels,
            edge_types_derived=False,
        )

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def arc_count(self) -> int:
        """Number of stored (directed) arcs."""
        return int(self.neighbors.shape[0])

    @property
    def mean_degree(self) -> float:
        """Arcs per node."""
        return self.arc_count / self.node_count if self.node_count else 0.0

    @property
    def type_count(self) -> int:
        """Number of node types (1 for untyped graphs)."""
        if self.node_types is None or self.node_types.size == 0:
            return 1
        return int(self.node_types.max()) + 1

    @property
    def edge_type_count(self) -> int:
        """Number of edge types; derived types span ``type_count ** 2`` codes."""
        if self.edge_types is None:
            return 1
        if self.edge_types_derived:
            return self.type_count * self.type_count
        return int(self.edge_types.max()) + 1 if self.edge_types.size else 1

    def degree(self, node: int) -> int:
        """Out-degree of ``node``."""
        return int(self.offsets[node + 1] - self.offsets[node])

    def degrees(self) -> np.ndarray:
        """Out-degree of every node."""
        return np.diff(self.offsets)

    def neighbor_slice(self, node: int) -> np.ndarray:
        """Sorted neighbor ids of ``node`` (read-only view)."""
        return self.neighbors[self.offsets[node] : self.offsets[node + 1]]

    def weight_slice(self, node: int) -> np.ndarray:
        """Static weights of ``node``'s arcs (read-only view)."""
        return self.weights[self.offsets[node] : self.offsets[node + 1]]

    def target(self, edge: EdgeRef) -> int:
        """Target node of an arc handle."""
        return int(self.neighbors[self.offsets[edge.source] + edge.neighbor_index])

    def weight(self, edge: EdgeRef) -> float:
        """Static weight of an arc handle."""
        return float(self.weights[self.offsets[edge.source] + edge.neighbor_index])

    def arc_index(self, u: int, v: int) -> int:
        """Index of ``v`` within ``u``'s neighbor slice, or -1 when absent."""
        start = self.offsets[u]
        end = self.offsets[u + 1]
        if start == end:
            return -1
        position = int(np.searchsorted(self.neighbors[start:end], v))
        if position < end - start and self.neighbors[start + position] == v:
            return position
        return -1

    def is_adjacent(self, u: int, v: int) -> bool:
        """True iff the arc ``u -> v`` exists (binary search over ``u``'s slice)."""
        return self.arc_index(u, v) >= 0

    def node_type(self, node: int) -> int:
        """Dense type id of ``node`` (0 for untyped graphs)."""
        if self.node_types is None:
            return 0
        return int(self.node_types[node])

    def edge_type(self, u: int, v: int) -> int:
        """Type id of the arc ``u -> v``.

        Derived types are computed from the node type pair, so the arc does
        not need to be located.
        """
        if self.edge_types is None:
            return 0
        if self.edge_types_derived:
            return self.node_type(u) * self.type_count + self.node_type(v)
        index = self.arc_index(u, v)
        if index < 0:
            raise GraphValidationError(f"No arc {u} -> {v}")
        return int(self.edge_types[self.offsets[u] + index])

    def is_sink(self, node: int) -> bool:
        """Node has arcs but none of them carries positive weight."""
        index = int(np.searchsorted(self.sink_nodes, node))
        return index < self.sink_nodes.size and int(self.sink_nodes[index]) == node

    def __str__(self) -> str:
        kind = "symmetric" if self.symmetric else "directed"
        return (
            f"Graph: {self.node_count} nodes, {self.arc_count} arcs "
            f"({kind}, {self.type_count} node types)"
        )


def _pattern_is_symmetric(matrix: sparse.csr_matrix) -> bool:
    """Check that the sparsity pattern equals its transpose."""
    pattern = matrix.copy()
    pattern.data = np.ones_like(pattern.data)
    return (pattern != pattern.T).nnz == 0
