"""Edge samplers behind one interface: next arc for a walker state.

``MhEdgeSampler`` is the constant-memory default; the alias, direct and
rejection samplers are the baselines the benchmark compares against.
"""

import logging
import math
import threading
from abc import ABC, abstractmethod
from typing import Dict, Tuple

import numpy as np

from mhwalk.engine.config import SamplerKind
from mhwalk.errors import RejectionExhausted, SamplerDeadEnd, SamplerError
from mhwalk.graph.csr import EdgeRef
from mhwalk.manager.layout import StateLayout
from mhwalk.manager.sampler_manager import SamplerManager, build_manager
from mhwalk.models.state import WalkerState
from mhwalk.models.walk_model import WalkModel
from mhwalk.samplers.alias import AliasTable, alias_build, alias_sample
from mhwalk.samplers.direct import direct_sample
from mhwalk.samplers.mh import InitStrategy, mh_transition
from mhwalk.samplers.random_stream import RandomStream
from mhwalk.samplers.rejection import rejection_sample

logger = logging.getLogger(__name__)


class EdgeSampler(ABC):
    """Draws the next arc for a walker state of one bound model.

    Counters are statistics only; concurrent walkers may lose increments.
    """

    kind: SamplerKind

    def __init__(self, model: WalkModel) -> None:
        self.model = model
        self.draws = 0
        self.proposals = 0
        self.accepted = 0

    @abstractmethod
    def sample(self, state: WalkerState, stream: RandomStream) -> EdgeRef:
        """Next arc out of ``state.position``.

        Raises:
            SamplerDeadEnd: If no candidate has positive weight
        """

    @abstractmethod
    def auxiliary_bytes(self) -> int:
        """Memory held by sampler structures beyond the graph itself."""

    @property
    def acceptance_ratio(self) -> float:
        """Accepted proposals over proposals (1.0 before any draw)."""
        return self.accepted / self.proposals if self.proposals else 1.0

    @property
    def init_seconds(self) -> float:
        return 0.0

    def _require_edges(self, state: WalkerState) -> int:
        degree = self.model.graph.degree(state.position)
        if degree == 0:
            raise SamplerDeadEnd(state.position, state.affixture)
        return degree

    def stats(self) -> Dict[str, float]:
        return {
            "draws": self.draws,
            "proposals": self.proposals,
            "acceptance_ratio": self.acceptance_ratio,
            "aux_bytes": self.auxiliary_bytes(),
        }


class MhEdgeSampler(EdgeSampler):
    """One M-H transition per draw through the shared sampler manager."""

    kind = SamplerKind.MH

    def __init__(
        self, model: WalkModel, strategy: InitStrategy, concurrent: bool = False
    ) -> None:
        super().__init__(model)
        self.strategy = strategy
        self.manager: SamplerManager = build_manager(model, concurrent=concurrent)

    def sample(self, state: WalkerState, stream: RandomStream) -> EdgeRef:
        self._require_edges(state)
        handle = self.manager.query_sampler(state, self.strategy, stream)
        index, accepted = mh_transition(handle, self.model, state, stream)
        self.draws += 1
        self.proposals += 1
        self.accepted += int(accepted)
        return EdgeRef(state.position, index)

    def auxiliary_bytes(self) -> int:
        return self.manager.auxiliary_bytes()

    @property
    def init_seconds(self) -> float:
        return self.manager.init_seconds


class AliasEdgeSampler(EdgeSampler):
    """Exact draws from a per-state alias table, built on first use and kept."""

    kind = SamplerKind.ALIAS

    def __init__(self, model: WalkModel) -> None:
        super().__init__(model)
        self.layout = StateLayout(model)
        self._tables: Dict[Tuple[bool, int], AliasTable] = {}
        self._lock = threading.Lock()
        self._build_seconds = 0.0

    def _key(self, state: WalkerState) -> Tuple[bool, int]:
        if state.is_bootstrap:
            return True, state.position
        return False, self.layout.slot_of(state)

    def table_for(self, state: WalkerState) -> AliasTable:
        key = self._key(state)
        table = self._tables.get(key)
        if table is None:
            try:
                table = alias_build(self.model.transition_weights(state))
            except SamplerError:
                raise SamplerDeadEnd(state.position, state.affixture) from None
            with self._lock:
                table = self._tables.setdefault(key, table)
        return table

    def sample(self, state: WalkerState, stream: RandomStream) -> EdgeRef:
        self._require_edges(state)
        index = alias_sample(self.table_for(state), stream)
        self.draws += 1
        self.proposals += 1
        self.accepted += 1
        return EdgeRef(state.position, index)

    def auxiliary_bytes(self) -> int:
        return sum(table.nbytes for table in list(self._tables.values()))

    @property
    def table_count(self) -> int:
        return len(self._tables)


class DirectEdgeSampler(EdgeSampler):
    """Exact inverse-CDF draw over freshly computed weights; nothing is stored."""

    kind = SamplerKind.DIRECT

    def sample(self, state: WalkerState, stream: RandomStream) -> EdgeRef:
        self._require_edges(state)
        weights = self.model.transition_weights(state)
        if not np.any(weights > 0):
            raise SamplerDeadEnd(state.position, state.affixture)
        index = direct_sample(weights, stream)
        self.draws += 1
        self.proposals += 1
        self.accepted += 1
        return EdgeRef(state.position, index)

    def auxiliary_bytes(self) -> int:
        return 0


class RejectionEdgeSampler(EdgeSampler):
    """Thin a static-weight alias proposal by ``w' / (envelope * w)``.

    After ``max_trials`` rejected proposals the draw is completed exactly by
    direct sampling, which keeps the output distribution unchanged.
    """

    kind = SamplerKind.REJECTION

    def __init__(self, model: WalkModel, trials_per_bound: int = 64) -> None:
        super().__init__(model)
        self.bound = model.envelope()
        self.max_trials = max(1, int(math.ceil(self.bound)) * trials_per_bound)
        self._proposals: Dict[int, AliasTable] = {}
        self._lock = threading.Lock()
        self.fallbacks = 0

    def proposal_for(self, node: int) -> AliasTable:
        table = self._proposals.get(node)
        if table is None:
            table = alias_build(self.model.graph.weight_slice(node))
            with self._lock:
                table = self._proposals.setdefault(node, table)
        return table

    def sample(self, state: WalkerState, stream: RandomStream) -> EdgeRef:
        v = state.position
        self._require_edges(state)
        static = self.model.graph.weight_slice(v)
        try:
            proposal = self.proposal_for(v)
        except SamplerError:
            raise SamplerDeadEnd(v, state.affixture) from None

        def target(i: int) -> float:
            return self.model.calculate_weight(state, EdgeRef(v, i))

        self.draws += 1
        try:
            index, trials = rejection_sample(
                target, proposal, static, self.bound, stream, max_trials=self.max_trials
            )
        except RejectionExhausted:
            self.proposals += self.max_trials
            self.fallbacks += 1
            weights = self.model.transition_weights(state)
            if not np.any(weights > 0):
                raise SamplerDeadEnd(v, state.affixture) from None
            return EdgeRef(v, direct_sample(weights, stream))
        self.proposals += trials
        self.accepted += 1
        return EdgeRef(v, index)

    def auxiliary_bytes(self) -> int:
        return sum(table.nbytes for table in list(self._proposals.values()))


def build_edge_sampler(
    kind: SamplerKind,
    model: WalkModel,
    strategy: InitStrategy,
    concurrent: bool = False,
) -> EdgeSampler:
    """Create the edge sampler of the given kind for ``model``."""
    if kind == SamplerKind.MH:
        return MhEdgeSampler(model, strategy, concurrent=concurrent)
    if kind == SamplerKind.ALIAS:
        return AliasEdgeSampler(model)
    if kind == SamplerKind.DIRECT:
        return DirectEdgeSampler(model)
    if kind == SamplerKind.REJECTION:
        return RejectionEdgeSampler(model)
    raise ValueError(f"Unknown sampler kind: {kind}")
