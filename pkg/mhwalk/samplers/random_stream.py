"""Seed-derived random streams.

Each stream wraps a ``Philox`` counter-based generator keyed by a
``SeedSequence`` spawn key, so a walker's randomness depends only on
``(seed, start node, walk index)`` and never on thread scheduling.
"""

from typing import Set

import numpy as np

_SEED_MASK = (1 << 64) - 1


class RandomStream:
    """Buffered source of uniform doubles and uniform indices."""

    BUFFER_SIZE = 256

    def __init__(self, generator: np.random.Generator) -> None:
        self.generator = generator
        self._buffer: np.ndarray = np.empty(0)
        self._cursor = 0

    @classmethod
    def from_seed(cls, seed: int, *key: int) -> "RandomStream":
        """Create the stream identified by ``seed`` and an optional integer key path."""
        sequence = np.random.SeedSequence(entropy=seed & _SEED_MASK, spawn_key=tuple(key))
        return cls(np.random.Generator(np.random.Philox(sequence)))

    @classmethod
    def for_walker(cls, seed: int, start: int, walk_index: int) -> "RandomStream":
        """Private stream of walk number ``walk_index`` starting at ``start``."""
        return cls.from_seed(seed, start, walk_index)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        if self._cursor >= self._buffer.shape[0]:
            self._buffer = self.generator.random(self.BUFFER_SIZE)
            self._cursor = 0
        value = self._buffer[self._cursor]
        self._cursor += 1
        return float(value)

    def index(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return min(int(self.uniform() * n), n - 1)

    def sample_without_replacement(self, n: int, k: int) -> Set[int]:
        """Uniform k-subset of range(n) (Floyd's algorithm)."""
        chosen: Set[int] = set()
        for j in range(n - k, n):
            t = self.index(j + 1)
            chosen.add(j if t in chosen else t)
        return chosen
