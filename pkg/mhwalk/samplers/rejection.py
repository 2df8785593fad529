"""Rejection sampling over a static-weight alias proposal."""

from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from mhwalk.errors import RejectionExhausted, SamplerError
from mhwalk.samplers.alias import AliasTable, alias_sample
from mhwalk.samplers.random_stream import RandomStream

TargetWeights = Union[np.ndarray, Sequence[float], Callable[[int], float]]

# Relative slack when checking the envelope of a lazily evaluated target
_ENVELOPE_TOLERANCE = 1e-12


def rejection_sample(
    target: TargetWeights,
    proposal: AliasTable,
    proposal_weights: Union[np.ndarray, Sequence[float]],
    bound: float,
    stream: RandomStream,
    max_trials: Optional[int] = None,
) -> Tuple[int, int]:
    """Draw from ``target`` by proposing from ``proposal`` and thinning.

    A proposal ``i`` is accepted with probability
    ``target[i] / (bound * proposal_weights[i])``.

    Args:
        target: Unnormalized target weights, or a callable evaluating one index
        proposal: Alias table over ``proposal_weights``
        proposal_weights: Unnormalized proposal weights
        bound: Envelope constant, at least ``max target[i] / proposal_weights[i]``
        stream: Random stream
        max_trials: Give up after this many proposals

    Returns:
        Tuple of (accepted index, number of proposals used)

    Raises:
        SamplerError: If the envelope is violated
        RejectionExhausted: If ``max_trials`` proposals were all rejected
    """
    if not bound > 0:
        raise SamplerError(f"rejection bound must be positive, got {bound}")

    if callable(target):
        evaluate = target
    else:
        vector = np.asarray(target, dtype=np.float64)
        base = np.asarray(proposal_weights, dtype=np.float64)
        if vector.shape != base.shape:
            raise SamplerError("target and proposal weights must have the same length")
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(base > 0, vector / base, np.where(vector > 0, np.inf, 0.0))
        if np.any(ratios > bound * (1 + _ENVELOPE_TOLERANCE)):
            raise SamplerError(f"rejection bound {bound} below max ratio {ratios.max()}")
        if not vector.sum() > 0:
            raise SamplerError("rejection target has no positive weight")
        evaluate = vector.__getitem__

    trials = 0
    while max_trials is None or trials < max_trials:
        trials += 1
        index = alias_sample(proposal, stream)
        base_weight = float(proposal_weights[index])
        if base_weight <= 0:
            continue
        weight = float(evaluate(index))
        ratio = weight / (bound * base_weight)
        if ratio > 1 + _ENVELOPE_TOLERANCE:
            raise SamplerError(f"rejection bound {bound} violated at index {index}")
        if stream.uniform() < ratio:
            return index, trials
    raise RejectionExhausted(trials)
