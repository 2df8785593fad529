"""Two-dimensional (position, affixture) layout of walker states.

All states sharing a position form one bucket of consecutive slots; the
affixture picks the slot inside the bucket:

    deepwalk                    1 slot per node           (|V| slots)
    node2vec/edge2vec/fairwalk  deg(v) slots per node      (|E| slots)
    metapath2vec                |types| slots per node     (|V| * |types| slots)

Metapath2vec states are keyed by the node type the next step must reach,
so cycle entries naming the same type share a slot (their transition
distributions are identical).
"""

import sys
from typing import Iterator, Tuple

import numpy as np

from mhwalk.errors import ModelContractError, ResourceError
from mhwalk.models.state import BOOTSTRAP, NONE, WalkerState
from mhwalk.models.walk_model import Metapath2VecModel, WalkModel


class StateLayout:
    """Constant-time mapping from walker states to flat slot indices."""

    def __init__(self, model: WalkModel, bytes_per_slot: int = 8) -> None:
        self.model = model
        graph = model.graph
        n = graph.node_count

        if model.second_order:
            bucket_offsets = graph.offsets.astype(np.int64)
        elif isinstance(model, Metapath2VecModel):
            bucket_offsets = np.arange(n + 1, dtype=np.int64) * graph.type_count
        else:
            bucket_offsets = np.arange(n + 1, dtype=np.int64)

        slot_count = int(bucket_offsets[-1])
        if slot_count * bytes_per_slot > sys.maxsize:
            raise ResourceError(
                f"{slot_count} sampler slots exceed addressable memory "
                f"({slot_count * bytes_per_slot} bytes)"
            )
        bucket_offsets.setflags(write=False)
        self.bucket_offsets = bucket_offsets
        self.slot_count = slot_count
        self._metapath = isinstance(model, Metapath2VecModel)

    def bucket_width(self, node: int) -> int:
        """Number of slots at ``node``."""
        return int(self.bucket_offsets[node + 1] - self.bucket_offsets[node])

    def key_of(self, state: WalkerState) -> int:
        """Affixture coordinate of ``state`` inside its bucket."""
        if self._metapath:
            return self.model.required_type(state)  # type: ignore[attr-defined]
        if state.affixture == NONE:
            return 0
        if state.affixture == BOOTSTRAP:
            raise ModelContractError("bootstrap states have no slot in the state layout")
        return state.affixture

    def slot_of(self, state: WalkerState) -> int:
        """Flat slot index: bucket offset of the position plus the affixture key."""
        key = self.key_of(state)
        slot = int(self.bucket_offsets[state.position]) + key
        if not 0 <= key < self.bucket_width(state.position):
            raise ModelContractError(
                f"state {state} falls outside bucket of width {self.bucket_width(state.position)}"
            )
        return slot

    def keys(self) -> Iterator[Tuple[int, int]]:
        """Every (position, key) pair of the layout, in slot order."""
        for node in range(self.model.graph.node_count):
            for key in range(self.bucket_width(node)):
                yield node, key
