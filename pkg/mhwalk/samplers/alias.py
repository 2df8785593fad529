"""Walker's alias method: O(d) construction and memory, O(1) draws."""

from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np

from mhwalk.errors import SamplerError
from mhwalk.samplers.random_stream import RandomStream


@dataclass
class AliasTable:
    """Acceptance probabilities and alias indices, one column per outcome."""
    prob: np.ndarray
    alias: np.ndarray

    @property
    def size(self) -> int:
        return int(self.prob.shape[0])

    @property
    def nbytes(self) -> int:
        """Memory held by the two columns."""
        return int(self.prob.nbytes + self.alias.nbytes)

    def probabilities(self) -> np.ndarray:
        """Decode the outcome distribution encoded by the table."""
        n = self.size
        decoded = self.prob.copy()
        np.add.at(decoded, self.alias, 1.0 - self.prob)
        return decoded / n


def alias_build(weights: Union[np.ndarray, Sequence[float]]) -> AliasTable:
    """Build an alias table for unnormalized non-negative weights.

    Raises:
        SamplerError: If no weight is positive
    """
    weights = np.asarray(weights, dtype=np.float64)
    total = weights.sum()
    if weights.size == 0 or not total > 0:
        raise SamplerError("alias table needs at least one positive weight")
    if np.any(weights < 0):
        raise SamplerError("alias weights must be non-negative")

    n = weights.shape[0]
    scaled = weights * (n / total)
    prob = np.ones(n, dtype=np.float64)
    alias = np.arange(n, dtype=np.int64)

    small: List[int] = [i for i in range(n) if scaled[i] < 1.0]
    large: List[int] = [i for i in range(n) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        g = large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] = (scaled[g] + scaled[s]) - 1.0
        (small if scaled[g] < 1.0 else large).append(g)
    # Whatever remains is 1 up to rounding.
    for i in large + small:
        prob[i] = 1.0
    return AliasTable(prob=prob, alias=alias)


def alias_sample(table: AliasTable, stream: RandomStream) -> int:
    """Draw an index with probability proportional to the table's weights."""
    column = stream.index(table.size)
    if stream.uniform() < table.prob[column]:
        return column
    return int(table.alias[column])
