"""One M-H sampler slot per walker state, initialized lazily on first query."""

import logging
import threading
import time
from typing import List, Optional

import numpy as np

from mhwalk.errors import ModelContractError, SamplerDeadEnd
from mhwalk.graph.csr import Graph
from mhwalk.manager.layout import StateLayout
from mhwalk.models.state import WalkerState
from mhwalk.models.walk_model import WalkModel
from mhwalk.samplers.mh import UNINITIALIZED, InitStrategy, mh_init
from mhwalk.samplers.random_stream import RandomStream

logger = logging.getLogger(__name__)

#: ``last`` value cached for a state whose candidates all have zero weight
DEAD_END = -2

# Slots sharing a flag byte share a lock stripe.
LOCK_STRIPES = 64


class SlotSampler:
    """Handle on one slot of a manager array; satisfies the ``last`` protocol."""

    __slots__ = ("_array", "slot")

    def __init__(self, array: np.ndarray, slot: int) -> None:
        self._array = array
        self.slot = slot

    @property
    def last(self) -> int:
        return int(self._array[self.slot])

    @last.setter
    def last(self, value: int) -> None:
        self._array[self.slot] = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SlotSampler):
            return NotImplemented
        return self._array is other._array and self.slot == other.slot

    def __hash__(self) -> int:
        return hash((id(self._array), self.slot))

    def __repr__(self) -> str:
        return f"SlotSampler(slot={self.slot}, last={self.last})"


class _SlotArray:
    """A flat ``last`` array with its init bitset."""

    def __init__(self, size: int) -> None:
        self.last = np.full(size, UNINITIALIZED, dtype=np.int64)
        self.flags = np.zeros((size + 7) // 8, dtype=np.uint8)

    def is_initialized(self, slot: int) -> bool:
        return bool(self.flags[slot >> 3] & (1 << (slot & 7)))

    def mark(self, slot: int) -> None:
        self.flags[slot >> 3] |= np.uint8(1 << (slot & 7))

    def count(self) -> int:
        return int(np.unpackbits(self.flags).sum())

    @property
    def nbytes(self) -> int:
        return int(self.last.nbytes + self.flags.nbytes)


class SamplerManager:
    """Sampler storage for one bound walk model.

    Second-order models keep a separate per-node array for bootstrap states
    (walkers that have not taken their first step); those slots are not part
    of the state layout.

    Args:
        model: Bound walk model
        concurrent: Guard slot initialization with striped locks
    """

    def __init__(self, model: WalkModel, concurrent: bool = False) -> None:
        self.model = model
        self.layout = StateLayout(model)
        self.concurrent = concurrent

        self._main = _SlotArray(self.layout.slot_count)
        self._bootstrap: Optional[_SlotArray] = (
            _SlotArray(model.graph.node_count) if model.second_order else None
        )
        self._locks: List[threading.Lock] = (
            [threading.Lock() for _ in range(LOCK_STRIPES)] if concurrent else []
        )
        self._stats_lock = threading.Lock()
        self.init_seconds = 0.0
        self.dead_ends = 0

    @property
    def slot_count(self) -> int:
        """Slots in the state layout (the model's number of walker states)."""
        return self.layout.slot_count

    @property
    def bucket_offsets(self) -> np.ndarray:
        return self.layout.bucket_offsets

    @property
    def samplers(self) -> np.ndarray:
        """Flat ``last`` array of the state layout."""
        return self._main.last

    def bucket_width(self, node: int) -> int:
        return self.layout.bucket_width(node)

    def initialized_count(self) -> int:
        """Number of initialized slots, bootstrap slots included."""
        total = self._main.count()
        if self._bootstrap is not None:
            total += self._bootstrap.count()
        return total

    def auxiliary_bytes(self) -> int:
        """Memory held by sampler slots and init flags."""
        total = self._main.nbytes
        if self._bootstrap is not None:
            total += self._bootstrap.nbytes
        return total

    def _locate(self, state: WalkerState):
        if state.is_bootstrap:
            if self._bootstrap is None:
                raise ModelContractError(f"{self.model.kind.value} has no bootstrap states")
            return self._bootstrap, state.position
        return self._main, self.layout.slot_of(state)

    def slot_of(self, state: WalkerState) -> int:
        """Flat slot of a non-bootstrap state."""
        return self.layout.slot_of(state)

    def query_sampler(
        self, state: WalkerState, strategy: InitStrategy, stream: RandomStream
    ) -> SlotSampler:
        """Sampler slot serving ``state``; runs ``mh_init`` on first touch.

        Raises:
            SamplerDeadEnd: If every candidate of ``state`` has zero weight
        """
        array, slot = self._locate(state)
        handle = SlotSampler(array.last, slot)

        if not array.is_initialized(slot):
            if self.concurrent:
                with self._locks[(slot >> 3) % LOCK_STRIPES]:
                    if not array.is_initialized(slot):
                        self._initialize(array, handle, state, strategy, stream)
            else:
                self._initialize(array, handle, state, strategy, stream)

        if handle.last == DEAD_END:
            raise SamplerDeadEnd(state.position, state.affixture)
        return handle

    def _initialize(
        self,
        array: _SlotArray,
        handle: SlotSampler,
        state: WalkerState,
        strategy: InitStrategy,
        stream: RandomStream,
    ) -> None:
        started = time.perf_counter()
        try:
            mh_init(strategy, self.model, state, stream, sampler=handle)
        except SamplerDeadEnd:
            handle.last = DEAD_END
            with self._stats_lock:
                self.dead_ends += 1
        array.mark(handle.slot)
        elapsed = time.perf_counter() - started
        with self._stats_lock:
            self.init_seconds += elapsed

    def __str__(self) -> str:
        return (
            f"SamplerManager({self.model.kind.value}, slots={self.slot_count}, "
            f"initialized={self.initialized_count()})"
        )


def build_manager(
    model: WalkModel, graph: Optional[Graph] = None, concurrent: bool = False
) -> SamplerManager:
    """Allocate every slot of ``model`` as uninitialized; no weights are computed.

    Raises:
        ModelContractError: If ``graph`` is not the graph ``model`` is bound to
        ResourceError: If the slot count overflows addressable memory
    """
    if graph is not None and graph is not model.graph:
        raise ModelContractError("model is bound to a different graph")
    manager = SamplerManager(model, concurrent=concurrent)
    logger.debug(f"Built {manager}")
    return manager


def query_sampler(
    manager: SamplerManager, state: WalkerState, strategy: InitStrategy, stream: RandomStream
) -> SlotSampler:
    """Functional form of :meth:`SamplerManager.query_sampler`."""
    return manager.query_sampler(state, strategy, stream)
