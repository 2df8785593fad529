"""Random-walk models expressed as a dynamic edge weight plus a state update rule."""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from mhwalk.errors import ModelConfigError, ModelContractError
from mhwalk.graph.csr import EdgeRef, Graph
from mhwalk.models.state import BOOTSTRAP, NONE, WalkerState

logger = logging.getLogger(__name__)


class ModelKind(Enum):
    """Built-in walk models."""
    DEEPWALK = "deepwalk"
    NODE2VEC = "node2vec"
    METAPATH2VEC = "metapath2vec"
    EDGE2VEC = "edge2vec"
    FAIRWALK = "fairwalk"


class WalkModel(ABC):
    """A walk model bound to one graph.

    Subclasses define the unnormalized dynamic weight ``w'`` of an arc under
    a walker state and how the state moves along a chosen arc. Normalizing
    ``calculate_weight`` over a state's candidates yields its transition
    distribution. Models are immutable after construction.
    """

    kind: ModelKind
    second_order: bool = False

    def __init__(self, graph: Graph) -> None:
        self.graph = graph

    # ------------------------------------------------------------------
    # Model interface
    # ------------------------------------------------------------------

    @abstractmethod
    def calculate_weight(self, state: WalkerState, candidate: EdgeRef) -> float:
        """Unnormalized dynamic weight of ``candidate`` under ``state``."""

    @abstractmethod
    def update_state(self, state: WalkerState, chosen: EdgeRef) -> WalkerState:
        """State reached by walking along ``chosen``."""

    @abstractmethod
    def initial_state(self, start: int) -> Optional[WalkerState]:
        """State of a fresh walker at ``start``, or None when ``start`` is not a legal start."""

    @abstractmethod
    def check_state(self, state: WalkerState) -> None:
        """Raise ModelContractError when ``state`` does not belong to this model."""

    def envelope(self) -> float:
        """Upper bound of ``w' / w`` over every state and arc with ``w > 0``."""
        return 1.0

    def describe(self) -> Dict[str, Any]:
        """Model parameters for run manifests."""
        return {"kind": self.kind.value}

    # ------------------------------------------------------------------
    # Helpers shared by all models
    # ------------------------------------------------------------------

    def _check_candidate(self, state: WalkerState, candidate: EdgeRef) -> None:
        if candidate.source != state.position:
            raise ModelContractError(
                f"Candidate arc leaves node {candidate.source}, walker is at {state.position}"
            )

    def transition_weights(self, state: WalkerState) -> np.ndarray:
        """Dynamic weight of every arc leaving ``state.position``."""
        degree = self.graph.degree(state.position)
        return np.array(
            [self.calculate_weight(state, EdgeRef(state.position, i)) for i in range(degree)],
            dtype=np.float64,
        )

    def transition_distribution(self, state: WalkerState) -> np.ndarray:
        """Normalized transition distribution of ``state`` (zeros when it has no support)."""
        weights = self.transition_weights(state)
        total = weights.sum()
        return weights / total if total > 0 else weights

    def __str__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.describe().items() if k != "kind")
        return f"{self.kind.value}({params})"


class DeepWalkModel(WalkModel):
    """First-order walk proportional to static edge weights."""

    kind = ModelKind.DEEPWALK

    def calculate_weight(self, state: WalkerState, candidate: EdgeRef) -> float:
        self._check_candidate(state, candidate)
        if state.affixture != NONE:
            raise ModelContractError(f"deepwalk state carries affixture {state.affixture}")
        graph = self.graph
        return float(graph.weights[graph.offsets[candidate.source] + candidate.neighbor_index])

    def update_state(self, state: WalkerState, chosen: EdgeRef) -> WalkerState:
        return WalkerState(self.graph.target(chosen), NONE)

    def initial_state(self, start: int) -> Optional[WalkerState]:
        return WalkerState(start, NONE)

    def check_state(self, state: WalkerState) -> None:
        if state.affixture != NONE:
            raise ModelContractError(f"deepwalk state carries affixture {state.affixture}")


class SecondOrderModel(WalkModel):
    """Base for models biased by the previously visited node ``s``.

    The affixture is the index of ``s`` within the neighbor slice of the
    current node, which requires a symmetric graph. A fresh walker has no
    previous node; its first step uses static weights.
    """

    second_order = True

    def __init__(self, graph: Graph, p: float = 1.0, q: float = 1.0) -> None:
        super().__init__(graph)
        if not graph.symmetric:
            raise ModelConfigError(
                f"{self.kind.value} needs a symmetric graph; load it with symmetrize enabled"
            )
        if not (p > 0 and q > 0) or not np.isfinite(p) or not np.isfinite(q):
            raise ModelConfigError(f"p and q must be positive, got p={p}, q={q}")
        self.p = float(p)
        self.q = float(q)
        self._inv_p = 1.0 / self.p
        self._inv_q = 1.0 / self.q

    def alpha(self, previous: int, candidate: int) -> float:
        """Return bias for moving to ``candidate`` when the walker came from ``previous``.

        Distance 0 (``candidate`` is the previous node) is checked before
        adjacency so that it wins when self-loops exist.
        """
        if candidate == previous:
            return self._inv_p
        if self.graph.is_adjacent(previous, candidate):
            return 1.0
        return self._inv_q

    def calculate_weight(self, state: WalkerState, candidate: EdgeRef) -> float:
        self._check_candidate(state, candidate)
        graph = self.graph
        base = int(graph.offsets[state.position])
        arc = base + candidate.neighbor_index
        weight = float(graph.weights[arc])
        if state.affixture == BOOTSTRAP:
            return weight
        self.check_state(state)
        previous = int(graph.neighbors[base + state.affixture])
        target = int(graph.neighbors[arc])
        return self._biased_weight(state.position, previous, target, arc, weight)

    @abstractmethod
    def _biased_weight(
        self, current: int, previous: int, target: int, arc: int, weight: float
    ) -> float:
        """Dynamic weight of arc ``current -> target`` with history ``previous``."""

    def update_state(self, state: WalkerState, chosen: EdgeRef) -> WalkerState:
        new_position = self.graph.target(chosen)
        back = self.graph.arc_index(new_position, state.position)
        if back < 0:
            raise ModelContractError(
                f"No reverse arc {new_position} -> {state.position}; graph is not symmetric"
            )
        return WalkerState(new_position, back)

    def initial_state(self, start: int) -> Optional[WalkerState]:
        return WalkerState(start, BOOTSTRAP)

    def check_state(self, state: WalkerState) -> None:
        if state.affixture == BOOTSTRAP:
            return
        if not 0 <= state.affixture < self.graph.degree(state.position):
            raise ModelContractError(
                f"{self.kind.value} affixture {state.affixture} out of range at node "
                f"{state.position}"
            )

    def envelope(self) -> float:
        return max(1.0, self._inv_p, self._inv_q)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "p": self.p, "q": self.q}


class Node2VecModel(SecondOrderModel):
    """Second-order walk with return parameter p and in-out parameter q."""

    kind = ModelKind.NODE2VEC

    def _biased_weight(
        self, current: int, previous: int, target: int, arc: int, weight: float
    ) -> float:
        return self.alpha(previous, target) * weight


class Edge2VecModel(SecondOrderModel):
    """node2vec bias scaled by an edge-type transition matrix ``M``.

    The weight of ``v -> u`` coming from ``s`` is
    ``alpha * M[type(s, v)][type(v, u)] * w``.
    """

    kind = ModelKind.EDGE2VEC

    def __init__(
        self,
        graph: Graph,
        p: float = 1.0,
        q: float = 1.0,
        edge_matrix: Optional[np.ndarray] = None,
    ) -> None:
        super().__init__(graph, p, q)
        type_count = graph.edge_type_count
        if edge_matrix is None:
            logger.info(f"No edge-type matrix given; using all-ones {type_count}x{type_count}")
            edge_matrix = np.ones((type_count, type_count), dtype=np.float64)
        matrix = np.asarray(edge_matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ModelConfigError(f"edge-type matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] < type_count:
            raise ModelConfigError(
                f"edge-type matrix is {matrix.shape[0]}x{matrix.shape[0]} but the graph has "
                f"{type_count} edge types"
            )
        if np.any(matrix < 0) or not np.all(np.isfinite(matrix)):
            raise ModelConfigError("edge-type matrix entries must be finite and non-negative")
        if np.any(matrix[:type_count].sum(axis=1) == 0):
            logger.warning("edge-type matrix has an all-zero row; some states become dead ends")
        matrix.setflags(write=False)
        self.edge_matrix = matrix

    def _arc_type(self, source: int, target: int, arc: int) -> int:
        graph = self.graph
        if graph.edge_types is None:
            return 0
        if graph.edge_types_derived:
            return graph.node_type(source) * graph.type_count + graph.node_type(target)
        return int(graph.edge_types[arc])

    def _biased_weight(
        self, current: int, previous: int, target: int, arc: int, weight: float
    ) -> float:
        incoming = self.graph.edge_type(previous, current)
        outgoing = self._arc_type(current, target, arc)
        return self.alpha(previous, target) * self.edge_matrix[incoming, outgoing] * weight

    def envelope(self) -> float:
        return super().envelope() * float(self.edge_matrix.max())

    def describe(self) -> Dict[str, Any]:
        info = super().describe()
        info["edge_matrix"] = self.edge_matrix.tolist()
        return info


class FairwalkModel(SecondOrderModel):
    """node2vec bias divided by the size of the candidate's type group.

    ``|K|`` counts the neighbors of the current node whose type equals the
    candidate's type, so every type group present around a node carries the
    same total mass when the biased weights inside groups are equal.
    """

    kind = ModelKind.FAIRWALK

    def __init__(self, graph: Graph, p: float = 1.0, q: float = 1.0) -> None:
        super().__init__(graph, p, q)
        if graph.node_types is None:
            logger.warning("fairwalk on an untyped graph: all neighbors form a single group")
        self.group_sizes = self._count_groups(graph)

    @staticmethod
    def _count_groups(graph: Graph) -> np.ndarray:
        """Return, for every arc ``v -> u``, how many neighbors of ``v`` share ``u``'s type."""
        if graph.arc_count == 0:
            return np.zeros(0, dtype=np.int64)
        sources = np.repeat(np.arange(graph.node_count), graph.degrees())
        if graph.node_types is None:
            target_types = np.zeros(graph.arc_count, dtype=np.int64)
        else:
            target_types = graph.node_types[graph.neighbors]
        keys = sources * graph.type_count + target_types
        _, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
        sizes = counts[inverse].astype(np.int64)
        sizes.setflags(write=False)
        return sizes

    def _biased_weight(
        self, current: int, previous: int, target: int, arc: int, weight: float
    ) -> float:
        return self.alpha(previous, target) * weight / float(self.group_sizes[arc])


class Metapath2VecModel(WalkModel):
    """First-order walk restricted to neighbors of the next metapath type.

    When the metapath starts and ends with the same type the last entry is
    the wrap-around point, so ``[0, 1, 0]`` walks types ``0 1 0 1 ...``;
    otherwise the whole metapath repeats.
    """

    kind = ModelKind.METAPATH2VEC

    def __init__(self, graph: Graph, metapath: Sequence[int]) -> None:
        super().__init__(graph)
        if graph.node_types is None:
            raise ModelConfigError("metapath2vec needs node types")
        if len(metapath) < 2:
            raise ModelConfigError(f"metapath needs at least 2 types, got {list(metapath)}")

        self.metapath: List[int] = [self._dense_type(label) for label in metapath]
        self.wraps_to_second = self.metapath[0] == self.metapath[-1]
        self.cycle: List[int] = self.metapath[:-1] if self.wraps_to_second else list(self.metapath)
        self.period = len(self.cycle)

    def _dense_type(self, label: int) -> int:
        labels = self.graph.type_labels
        if labels is None:
            dense = int(label)
        else:
            matches = np.flatnonzero(labels == label)
            if matches.size == 0:
                raise ModelConfigError(f"metapath type {label} does not occur in the graph")
            dense = int(matches[0])
        if not 0 <= dense < self.graph.type_count:
            raise ModelConfigError(f"metapath type {label} does not occur in the graph")
        return dense

    def required_type(self, state: WalkerState) -> int:
        """Node type the next step must reach."""
        return self.cycle[state.affixture]

    def calculate_weight(self, state: WalkerState, candidate: EdgeRef) -> float:
        self._check_candidate(state, candidate)
        self.check_state(state)
        graph = self.graph
        arc = int(graph.offsets[candidate.source]) + candidate.neighbor_index
        if graph.node_types[graph.neighbors[arc]] != self.cycle[state.affixture]:
            return 0.0
        return float(graph.weights[arc])

    def update_state(self, state: WalkerState, chosen: EdgeRef) -> WalkerState:
        return WalkerState(self.graph.target(chosen), (state.affixture + 1) % self.period)

    def initial_state(self, start: int) -> Optional[WalkerState]:
        if self.graph.node_type(start) != self.cycle[0]:
            return None
        return WalkerState(start, 1 % self.period)

    def check_state(self, state: WalkerState) -> None:
        if not 0 <= state.affixture < self.period:
            raise ModelContractError(
                f"metapath2vec affixture {state.affixture} outside cycle of length {self.period}"
            )

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "metapath": list(self.metapath),
            "cycle": list(self.cycle),
            "wrap_to": 1 if self.wraps_to_second else 0,
        }
