"""Tests for walk models: dynamic weights, state updates and initial states."""

from typing import Dict, Set

import numpy as np
import pytest

from mhwalk.errors import ModelConfigError, ModelContractError
from mhwalk.graph import EdgeRef, Graph, typed_random_graph
from mhwalk.models import (
    BOOTSTRAP,
    NONE,
    DeepWalkModel,
    Edge2VecModel,
    FairwalkModel,
    Metapath2VecModel,
    ModelKind,
    Node2VecModel,
    WalkerState,
    build_model,
    parse_metapath,
)


@pytest.fixture
def triangle() -> Graph:
    """Symmetric unit-weight triangle."""
    return Graph.from_arcs(3, [0, 1, 2], [1, 2, 0], symmetrize=True)


@pytest.fixture
def path3() -> Graph:
    """Symmetric path 0-1-2 with node types [0, 1, 0]."""
    graph = Graph.from_arcs(3, [0, 1], [1, 2], symmetrize=True)
    return graph.with_node_types(np.array([0, 1, 0]))


@pytest.fixture
def typed_graph() -> Graph:
    """Small weighted graph with three node types."""
    return typed_random_graph(40, 120, 3, seed=17, weighted=True)


def _neighbor_sets(graph: Graph) -> Dict[int, Set[int]]:
    return {v: set(graph.neighbor_slice(v).tolist()) for v in range(graph.node_count)}


def _node2vec_oracle(graph: Graph, v: int, s: int, p: float, q: float) -> np.ndarray:
    """Straight-line evaluation of the node2vec bias times static weight."""
    adjacency = _neighbor_sets(graph)
    weights = []
    for u, w in zip(graph.neighbor_slice(v).tolist(), graph.weight_slice(v).tolist()):
        if u == s:
            alpha = 1 / p
        elif u in adjacency[s]:
            alpha = 1.0
        else:
            alpha = 1 / q
        weights.append(alpha * w)
    return np.array(weights)


def _normalize(weights: np.ndarray) -> np.ndarray:
    total = weights.sum()
    return weights / total if total > 0 else weights


class TestDeepWalk:
    """Tests for the first-order static-weight model."""

    def test_weight_is_static_weight(self) -> None:
        """Test that a weighted edge of 2.5 has dynamic weight 2.5."""
        graph = Graph.from_arcs(2, [0], [1], [2.5], symmetrize=True)
        model = DeepWalkModel(graph)
        assert model.calculate_weight(WalkerState(0), EdgeRef(0, 0)) == 2.5

    def test_update_state(self) -> None:
        """Test that moving along 3 -> 7 yields state at 7 with no affixture."""
        graph = Graph.from_arcs(8, [3], [7])
        model = DeepWalkModel(graph)
        assert model.update_state(WalkerState(3), EdgeRef(3, 0)) == WalkerState(7, NONE)

    def test_initial_state(self, triangle: Graph) -> None:
        """Test that every node is a ready start."""
        assert DeepWalkModel(triangle).initial_state(2) == WalkerState(2, NONE)

    def test_affixture_is_contract_violation(self, triangle: Graph) -> None:
        """Test that a second-order state is rejected by deepwalk."""
        model = DeepWalkModel(triangle)
        with pytest.raises(ModelContractError):
            model.calculate_weight(WalkerState(0, 1), EdgeRef(0, 0))
        with pytest.raises(ModelContractError):
            model.check_state(WalkerState(0, 0))

    def test_candidate_must_leave_position(self, triangle: Graph) -> None:
        """Test that a candidate arc from another node is rejected."""
        with pytest.raises(ModelContractError):
            DeepWalkModel(triangle).calculate_weight(WalkerState(0), EdgeRef(1, 0))


class TestNode2Vec:
    """Tests for the second-order node2vec model."""

    def test_unit_parameters_reduce_to_static(self, typed_graph: Graph) -> None:
        """Test that p = q = 1 gives the static weight for every candidate."""
        model = Node2VecModel(typed_graph, 1.0, 1.0)
        for v in range(typed_graph.node_count):
            for a in range(typed_graph.degree(v)):
                weights = model.transition_weights(WalkerState(v, a))
                assert np.array_equal(weights, typed_graph.weight_slice(v))

    def test_return_bias(self, triangle: Graph) -> None:
        """Test that with p = 0.25 going back to the previous node weighs 4.0."""
        model = Node2VecModel(triangle, p=0.25, q=1.0)
        state = WalkerState(1, triangle.arc_index(1, 0))
        assert model.calculate_weight(state, EdgeRef(1, 0)) == pytest.approx(4.0)
        assert model.calculate_weight(state, EdgeRef(1, 1)) == pytest.approx(1.0)

    def test_outward_bias(self, path3: Graph) -> None:
        """Test that a candidate two hops from the previous node weighs 1/q."""
        model = Node2VecModel(path3, p=1.0, q=0.5)
        state = WalkerState(1, path3.arc_index(1, 0))
        assert model.calculate_weight(state, EdgeRef(1, 1)) == pytest.approx(2.0)

    def test_bootstrap_uses_static_weights(self, typed_graph: Graph) -> None:
        """Test that a fresh walker samples proportionally to static weights."""
        model = Node2VecModel(typed_graph, p=0.25, q=4.0)
        state = model.initial_state(5)
        assert state == WalkerState(5, BOOTSTRAP)
        assert state.is_bootstrap
        assert np.array_equal(model.transition_weights(state), typed_graph.weight_slice(5))

    def test_update_state_on_triangle(self, triangle: Graph) -> None:
        """Test that moving 1 -> 2 after 0 stores the index of 1 in N(2)."""
        model = Node2VecModel(triangle)
        state = WalkerState(1, triangle.arc_index(1, 0))
        chosen = EdgeRef(1, triangle.arc_index(1, 2))
        new_state = model.update_state(state, chosen)
        assert new_state == WalkerState(2, 1)
        assert triangle.neighbor_slice(2)[new_state.affixture] == 1

    def test_matches_oracle(self, typed_graph: Graph) -> None:
        """Test normalized distributions against direct evaluation for every state."""
        model = Node2VecModel(typed_graph, p=0.5, q=2.0)
        for v in range(typed_graph.node_count):
            for a, s in enumerate(typed_graph.neighbor_slice(v).tolist()):
                actual = model.transition_distribution(WalkerState(v, a))
                expected = _normalize(_node2vec_oracle(typed_graph, v, s, 0.5, 2.0))
                assert np.max(np.abs(actual - expected)) < 1e-12

    def test_envelope(self, triangle: Graph) -> None:
        """Test the dynamic-over-static bound."""
        assert Node2VecModel(triangle, p=0.25, q=1.0).envelope() == pytest.approx(4.0)
        assert Node2VecModel(triangle, p=2.0, q=0.5).envelope() == pytest.approx(2.0)
        assert Node2VecModel(triangle).envelope() == 1.0

    def test_affixture_out_of_range(self, triangle: Graph) -> None:
        """Test that an affixture beyond the degree is a contract violation."""
        model = Node2VecModel(triangle)
        with pytest.raises(ModelContractError):
            model.calculate_weight(WalkerState(0, 5), EdgeRef(0, 0))

    def test_requires_symmetric_graph(self) -> None:
        """Test that a directed graph is rejected at construction."""
        with pytest.raises(ModelConfigError, match="symmetric"):
            Node2VecModel(Graph.from_arcs(3, [0, 1], [1, 2]))

    @pytest.mark.parametrize("p, q", [(0.0, 1.0), (1.0, -2.0), (float("inf"), 1.0)])
    def test_invalid_parameters(self, triangle: Graph, p: float, q: float) -> None:
        """Test that non-positive or infinite p/q are rejected."""
        with pytest.raises(ModelConfigError):
            Node2VecModel(triangle, p, q)


class TestEdge2Vec:
    """Tests for the edge-type-aware second-order model."""

    def test_matches_oracle(self, typed_graph: Graph) -> None:
        """Test normalized distributions against alpha * M[type(s,v), type(v,u)] * w."""
        type_count = typed_graph.edge_type_count
        matrix = np.random.default_rng(3).uniform(0.1, 2.0, size=(type_count, type_count))
        model = Edge2VecModel(typed_graph, p=2.0, q=0.5, edge_matrix=matrix)
        types = typed_graph.node_types
        node_type_count = typed_graph.type_count

        for v in range(typed_graph.node_count):
            for a, s in enumerate(typed_graph.neighbor_slice(v).tolist()):
                base = _node2vec_oracle(typed_graph, v, s, 2.0, 0.5)
                incoming = types[s] * node_type_count + types[v]
                outgoing = types[v] * node_type_count + types[typed_graph.neighbor_slice(v)]
                expected = _normalize(base * matrix[incoming, outgoing])
                actual = model.transition_distribution(WalkerState(v, a))
                assert np.max(np.abs(actual - expected)) < 1e-12

    def test_default_matrix_is_node2vec(self, typed_graph: Graph) -> None:
        """Test that the all-ones matrix reproduces node2vec."""
        edge2vec = Edge2VecModel(typed_graph, p=0.5, q=2.0)
        node2vec = Node2VecModel(typed_graph, p=0.5, q=2.0)
        assert np.all(edge2vec.edge_matrix == 1.0)
        for v in range(0, typed_graph.node_count, 5):
            for a in range(typed_graph.degree(v)):
                state = WalkerState(v, a)
                assert np.allclose(
                    edge2vec.transition_weights(state), node2vec.transition_weights(state)
                )

    def test_envelope_scales_with_matrix(self, typed_graph: Graph) -> None:
        """Test that the envelope includes the largest matrix entry."""
        size = typed_graph.edge_type_count
        matrix = np.full((size, size), 3.0)
        model = Edge2VecModel(typed_graph, p=0.5, q=1.0, edge_matrix=matrix)
        assert model.envelope() == pytest.approx(6.0)

    def test_matrix_too_small(self, typed_graph: Graph) -> None:
        """Test that a matrix smaller than the edge-type count is rejected."""
        with pytest.raises(ModelConfigError):
            Edge2VecModel(typed_graph, edge_matrix=np.ones((2, 2)))

    def test_negative_entries(self, triangle: Graph) -> None:
        """Test that negative matrix entries are rejected."""
        with pytest.raises(ModelConfigError):
            Edge2VecModel(triangle, edge_matrix=np.array([[-1.0]]))


class TestFairwalk:
    """Tests for the type-balanced second-order model."""

    def test_two_groups_of_two(self) -> None:
        """Test that 4 neighbors in 2 equal type groups each weigh 1/2."""
        graph = Graph.from_arcs(5, [0, 0, 0, 0], [1, 2, 3, 4], symmetrize=True)
        graph = graph.with_node_types(np.array([0, 0, 0, 1, 1]))
        model = FairwalkModel(graph)
        state = WalkerState(0, 0)
        for i in range(4):
            assert model.calculate_weight(state, EdgeRef(0, i)) == pytest.approx(0.5)

    def test_groups_carry_equal_mass(self, typed_graph: Graph) -> None:
        """Test that with p = q = 1 and unit weights every present type gets equal mass."""
        graph = Graph(
            node_count=typed_graph.node_count,
            offsets=typed_graph.offsets,
            neighbors=typed_graph.neighbors,
            weights=np.ones(typed_graph.arc_count),
            symmetric=True,
        ).with_node_types(typed_graph.node_types)
        model = FairwalkModel(graph)
        for v in range(graph.node_count):
            if graph.degree(v) == 0:
                continue
            dist = model.transition_distribution(WalkerState(v, 0))
            neighbor_types = graph.node_types[graph.neighbor_slice(v)]
            masses = [dist[neighbor_types == t].sum() for t in np.unique(neighbor_types)]
            assert np.allclose(masses, 1.0 / len(masses))

    def test_untyped_is_node2vec_scaled(self, triangle: Graph) -> None:
        """Test that an untyped graph forms one group per node."""
        model = FairwalkModel(triangle)
        assert model.calculate_weight(WalkerState(0, 0), EdgeRef(0, 1)) == pytest.approx(0.5)


class TestMetapath2Vec:
    """Tests for the metapath-constrained model."""

    def test_mismatched_type_weighs_zero(self, path3: Graph) -> None:
        """Test that a neighbor of the wrong type has weight 0."""
        model = Metapath2VecModel(path3, [1, 0])
        assert model.initial_state(1) == WalkerState(1, 1)
        # At node 1 the walker needs type 0: both neighbors match.
        assert model.transition_weights(WalkerState(1, 1)).tolist() == [1.0, 1.0]
        # Requiring type 1 at node 1 matches neither neighbor.
        assert model.transition_weights(WalkerState(1, 0)).tolist() == [0.0, 0.0]

    def test_affixture_cycles(self, path3: Graph) -> None:
        """Test that the affixture advances modulo the period."""
        model = Metapath2VecModel(path3, [0, 1])
        state = WalkerState(0, 0)
        state = model.update_state(state, EdgeRef(0, 0))
        assert state == WalkerState(1, 1)
        state = model.update_state(state, EdgeRef(1, 1))
        assert state == WalkerState(2, 0)

    def test_symmetric_metapath_wraps_to_second_entry(self, path3: Graph) -> None:
        """Test that [0, 1, 0] walks the cycle 0 1 0 1 with period 2."""
        model = Metapath2VecModel(path3, [0, 1, 0])
        assert model.cycle == [0, 1]
        assert model.period == 2
        assert model.initial_state(0) == WalkerState(0, 1)

    def test_start_of_wrong_type_skipped(self, path3: Graph) -> None:
        """Test that a start whose type is not the first metapath type is illegal."""
        model = Metapath2VecModel(path3, [0, 1, 0])
        assert model.initial_state(1) is None

    def test_matches_oracle(self, typed_graph: Graph) -> None:
        """Test normalized distributions against the type filter evaluated directly."""
        model = Metapath2VecModel(typed_graph, [0, 1, 2])
        for v in range(typed_graph.node_count):
            if typed_graph.degree(v) == 0:
                continue
            for j, required in enumerate(model.cycle):
                neighbors = typed_graph.neighbor_slice(v)
                weights = typed_graph.weight_slice(v).copy()
                weights[typed_graph.node_types[neighbors] != required] = 0.0
                actual = model.transition_distribution(WalkerState(v, j))
                assert np.max(np.abs(actual - _normalize(weights))) < 1e-12

    def test_sparse_labels(self, path3: Graph) -> None:
        """Test that metapath entries name the original type labels."""
        graph = path3.with_node_types(path3.node_types, type_labels=np.array([4, 9]))
        model = Metapath2VecModel(graph, [9, 4])
        assert model.metapath == [1, 0]
        with pytest.raises(ModelConfigError):
            Metapath2VecModel(graph, [0, 1])

    def test_requires_types(self, triangle: Graph) -> None:
        """Test that an untyped graph cannot host metapath2vec."""
        with pytest.raises(ModelConfigError, match="node types"):
            Metapath2VecModel(triangle, [0, 1])

    def test_affixture_out_of_cycle(self, path3: Graph) -> None:
        """Test that an affixture beyond the period is a contract violation."""
        model = Metapath2VecModel(path3, [0, 1])
        with pytest.raises(ModelContractError):
            model.calculate_weight(WalkerState(0, 2), EdgeRef(0, 0))


class TestFactory:
    """Tests for model construction from user parameters."""

    def test_build_each_kind(self, typed_graph: Graph) -> None:
        """Test that every kind builds and reports its kind."""
        for kind in ModelKind:
            model = build_model(kind.value, typed_graph, p=0.5, q=2.0, metapath=[0, 1])
            assert model.kind == kind
            assert model.describe()["kind"] == kind.value

    def test_unknown_kind(self, triangle: Graph) -> None:
        """Test that unknown model names list the choices."""
        with pytest.raises(ModelConfigError, match="deepwalk"):
            build_model("word2vec", triangle)

    def test_metapath_required(self, path3: Graph) -> None:
        """Test that metapath2vec needs a metapath."""
        with pytest.raises(ModelConfigError):
            build_model(ModelKind.METAPATH2VEC, path3)

    def test_parse_metapath(self) -> None:
        """Test parsing comma-separated type ids."""
        assert parse_metapath("0,1,0") == [0, 1, 0]
        assert parse_metapath(" 2, 3 ") == [2, 3]
        with pytest.raises(ModelConfigError):
            parse_metapath("0,a")
        with pytest.raises(ModelConfigError):
            parse_metapath("0,-1")
