"""Metropolis-Hastings edge sampler with a uniform proposal over neighbors.

Each sampler keeps a single neighbor index (the last accepted sample) per
walker state. A step proposes a neighbor uniformly from the whole slice and
accepts it with probability ``min(1, w'(candidate) / w'(last))``; the chain
converges to the state's transition distribution restricted to its support.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Protocol, Tuple, Union

from mhwalk.errors import SamplerDeadEnd
from mhwalk.graph.csr import EdgeRef
from mhwalk.models.state import WalkerState
from mhwalk.models.walk_model import WalkModel
from mhwalk.samplers.random_stream import RandomStream

logger = logging.getLogger(__name__)

#: ``last`` value of a sampler that has not been initialized
UNINITIALIZED = -1


class InitKind(Enum):
    """How a sampler picks its first sample."""
    RANDOM = "random"
    HIGH_WEIGHT = "high_weight"
    BURN_IN = "burn_in"


@dataclass(frozen=True)
class InitStrategy:
    """Initialization strategy and its parameters."""
    kind: InitKind = InitKind.HIGH_WEIGHT
    burn_in_steps: int = 100  # transitions discarded by the burn-in strategy
    hw_sample_size: int = 32  # neighbors probed by approximate high-weight

    def __post_init__(self) -> None:
        if self.burn_in_steps < 1:
            raise ValueError(f"burn_in_steps must be >= 1, got {self.burn_in_steps}")
        if self.hw_sample_size < 1:
            raise ValueError(f"hw_sample_size must be >= 1, got {self.hw_sample_size}")

    @classmethod
    def from_name(cls, name: Union[str, InitKind], **kwargs: Any) -> "InitStrategy":
        """Create from a CLI-style name ("random", "high-weight", "burn-in")."""
        if isinstance(name, InitKind):
            return cls(kind=name, **kwargs)
        return cls(kind=InitKind(name.replace("-", "_")), **kwargs)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "kind": self.kind.value,
            "burn_in_steps": self.burn_in_steps,
            "hw_sample_size": self.hw_sample_size,
        }


class LastSample(Protocol):
    """Anything holding a ``last`` neighbor index (standalone or manager slot)."""
    last: int


class MhSampler:
    """Standalone sampler: exactly one neighbor-index slot."""

    __slots__ = ("last",)

    def __init__(self, last: int = UNINITIALIZED) -> None:
        self.last = last

    @property
    def initialized(self) -> bool:
        return self.last != UNINITIALIZED

    def __repr__(self) -> str:
        return f"MhSampler(last={self.last})"


def _random_positive(model: WalkModel, state: WalkerState, stream: RandomStream) -> int:
    """Uniformly chosen candidate with positive dynamic weight."""
    v = state.position
    degree = model.graph.degree(v)
    if degree == 0:
        raise SamplerDeadEnd(v, state.affixture)

    # Uniform guesses first; a full scan only when they keep missing.
    for _ in range(degree):
        i = stream.index(degree)
        if model.calculate_weight(state, EdgeRef(v, i)) > 0:
            return i

    positives: List[int] = [
        i for i in range(degree) if model.calculate_weight(state, EdgeRef(v, i)) > 0
    ]
    if not positives:
        raise SamplerDeadEnd(v, state.affixture)
    return positives[stream.index(len(positives))]


def _high_weight(
    model: WalkModel, state: WalkerState, stream: RandomStream, sample_size: int
) -> int:
    """Best of ``sample_size`` probed candidates; exact when the degree is small."""
    v = state.position
    degree = model.graph.degree(v)
    if degree == 0:
        raise SamplerDeadEnd(v, state.affixture)

    if degree <= sample_size:
        probes = range(degree)
    else:
        probes = sorted(stream.sample_without_replacement(degree, sample_size))

    best = -1
    best_weight = 0.0
    for i in probes:
        weight = model.calculate_weight(state, EdgeRef(v, i))
        if weight > best_weight:
            best, best_weight = i, weight
    if best < 0:
        # No probed candidate has support; fall back to a positive one.
        return _random_positive(model, state, stream)
    return best


def mh_transition(
    sampler: LastSample, model: WalkModel, state: WalkerState, stream: RandomStream
) -> Tuple[int, bool]:
    """One M-H transition.

    The slot is read once and written at most once, so concurrent walkers
    sharing it only ever observe whole, validly accepted samples.

    Returns:
        Tuple of (neighbor index held after the step, whether it was accepted)
    """
    v = state.position
    candidate = stream.index(model.graph.degree(v))
    threshold = stream.uniform()
    last = sampler.last

    candidate_weight = model.calculate_weight(state, EdgeRef(v, candidate))
    last_weight = model.calculate_weight(state, EdgeRef(v, last))
    # theta = min(1, w'_candidate / w'_last), with theta = 1 when w'_last is 0
    if last_weight <= 0 or threshold * last_weight < candidate_weight:
        sampler.last = candidate
        return candidate, True
    return last, False


def mh_step(
    sampler: LastSample, model: WalkModel, state: WalkerState, stream: RandomStream
) -> bool:
    """One M-H transition; returns True when the candidate was accepted."""
    return mh_transition(sampler, model, state, stream)[1]


def mh_init(
    strategy: InitStrategy,
    model: WalkModel,
    state: WalkerState,
    stream: RandomStream,
    sampler: Union[LastSample, None] = None,
) -> LastSample:
    """Initialize a sampler for ``state`` with the given strategy.

    Args:
        strategy: Initialization strategy
        model: Bound walk model
        state: Walker state the sampler serves
        stream: Random stream
        sampler: Slot to initialize (a fresh MhSampler when omitted)

    Returns:
        The initialized sampler

    Raises:
        SamplerDeadEnd: If every candidate weight is zero
    """
    if sampler is None:
        sampler = MhSampler()

    if strategy.kind == InitKind.HIGH_WEIGHT:
        sampler.last = _high_weight(model, state, stream, strategy.hw_sample_size)
    else:
        sampler.last = _random_positive(model, state, stream)
        if strategy.kind == InitKind.BURN_IN:
            for _ in range(strategy.burn_in_steps):
                mh_step(sampler, model, state, stream)
    return sampler


def mh_sample(
    sampler: LastSample, model: WalkModel, state: WalkerState, stream: RandomStream
) -> EdgeRef:
    """Advance the sampler's chain one step and return the arc it now holds."""
    index, _ = mh_transition(sampler, model, state, stream)
    return EdgeRef(state.position, index)
