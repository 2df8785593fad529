"""Direct (inverse-CDF) sampling: O(1) memory, O(d) per draw."""

from typing import Sequence, Union

import numpy as np

from mhwalk.errors import SamplerError
from mhwalk.samplers.random_stream import RandomStream


def direct_sample(weights: Union[np.ndarray, Sequence[float]], stream: RandomStream) -> int:
    """Draw index i with probability weights[i] / sum(weights).

    One summation pass, then a linear scan of the running sum.

    Raises:
        SamplerError: If a weight is negative or none is positive
    """
    total = 0.0
    for w in weights:
        if w < 0:
            raise SamplerError("direct sampling weights must be non-negative")
        total += w
    if not total > 0:
        raise SamplerError("direct sampling needs at least one positive weight")

    threshold = stream.uniform() * total
    running = 0.0
    last_positive = -1
    for i, w in enumerate(weights):
        if w <= 0:
            continue
        running += w
        last_positive = i
        if threshold < running:
            return i
    # Rounding can leave the threshold just above the final running sum.
    return last_positive
